#!/usr/bin/env python3
"""Graded dimensions of preprojective algebras for small modulated graphs.

Each row lists the Dynkin verdict from the Cartan matrix, the graded
rational dimensions up to the degree cap and the total when finite.  The
two columns should agree: a finite total appears exactly for Dynkin graphs.

    python3 scripts/preprojective_table.py --cap 10
"""

import argparse
import time

from clustermod import RATIONALS as Q
from clustermod import graded_dims, graph_from_valuations, is_dynkin, make_field_algebra

K2 = make_field_algebra([-2, 0, 1])
K3 = make_field_algebra([-2, 0, 0, 1])
K4 = make_field_algebra([-2, 0, 0, 0, 1])
K5 = make_field_algebra([-2, 0, 0, 0, 0, 1])

CORPUS = {
    "point": ({"1": Q}, []),
    "A2": ({"1": Q, "2": Q}, [("1", "2", (1, 1))]),
    "B2 (1,2)": ({"1": Q, "2": K2}, [("1", "2", (1, 2))]),
    "G2 (1,3)": ({"1": Q, "2": K3}, [("1", "2", (1, 3))]),
    "(1,4)": ({"1": Q, "2": K4}, [("1", "2", (1, 4))]),
    "(2,2)": ({"1": Q, "2": Q}, [("1", "2", (2, 2))]),
    "(1,5)": ({"1": Q, "2": K5}, [("1", "2", (1, 5))]),
    "A3": ({"1": Q, "2": Q, "3": Q}, [("1", "2", (1, 1)), ("2", "3", (1, 1))]),
    "B3": ({"1": Q, "2": Q, "3": K2}, [("1", "2", (1, 1)), ("2", "3", (1, 2))]),
    "C3": ({"1": K2, "2": K2, "3": Q}, [("1", "2", (1, 1)), ("2", "3", (2, 1))]),
    "Q-Q(sqrt2)-Q": ({"1": Q, "2": K2, "3": Q}, [("1", "2", (1, 2)), ("2", "3", (2, 1))]),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=10)
    args = ap.parse_args(argv)

    print(f"{'graph':<14} {'dynkin':<7} {'total':>6} {'time':>8}  dims")
    for name, (fields, edges) in CORPUS.items():
        G = graph_from_valuations(fields, edges)
        start = time.perf_counter()
        g = graded_dims(G, args.cap)
        elapsed = time.perf_counter() - start
        total = "-" if g.total is None else str(g.total)
        print(f"{name:<14} {str(is_dynkin(G)).lower():<7} {total:>6} {elapsed:>7.3f}s  {g.dims}")


if __name__ == "__main__":
    main()
