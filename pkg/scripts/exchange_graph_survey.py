#!/usr/bin/env python3
"""Survey exchange graphs of small exchange matrices.

Prints one row per matrix: whether exploration closed up, the number of
seeds and cluster variables, and the wall time.

    python3 scripts/exchange_graph_survey.py --max-seeds 2000
"""

import argparse
import time

from clustermod import ExchangeMatrix, explore, initial_seed

SURVEY = {
    "A1": ((0,),),
    "A1 framed": ((0,), (1,)),
    "A1 x A1": ((0, 0), (0, 0)),
    "A2": ((0, 1), (-1, 0)),
    "B2": ((0, 1), (-2, 0)),
    "G2": ((0, 1), (-3, 0)),
    "Kronecker": ((0, 2), (-2, 0)),
    "A(1,4)": ((0, 1), (-4, 0)),
    "A3": ((0, 1, 0), (-1, 0, 1), (0, -1, 0)),
    "B3": ((0, 1, 0), (-1, 0, 1), (0, -2, 0)),
    "C3": ((0, 1, 0), (-1, 0, 2), (0, -1, 0)),
    "A3 cyclic": ((0, 1, -1), (-1, 0, 1), (1, -1, 0)),
    "B2 framed": ((0, 1), (-2, 0), (1, -1)),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-depth", type=int, default=12)
    ap.add_argument("--max-seeds", type=int, default=1000)
    ap.add_argument("--workers", type=int, default=None, help="thread pool size (default $CLUSTER_THREADS)")
    args = ap.parse_args(argv)

    print(f"{'matrix':<12} {'state':<10} {'seeds':>6} {'vars':>6} {'time':>8}")
    for name, rows in SURVEY.items():
        start = time.perf_counter()
        g = explore(initial_seed(ExchangeMatrix(rows)), args.max_depth, args.max_seeds, args.workers)
        elapsed = time.perf_counter() - start
        state = "complete" if g.complete else "truncated"
        print(f"{name:<12} {state:<10} {g.n_seeds:>6} {g.n_variables:>6} {elapsed:>7.3f}s")


if __name__ == "__main__":
    main()
