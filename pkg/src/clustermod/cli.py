"""Command-line front end.

    clustermod VERB --input FILE [options]

Exit status: 0 success, 2 unparsable input, 3 violated precondition,
4 resource cap exceeded, 5 Laurent-phenomenon violation (internal bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .exchange_matrix import ExchangeMatrix, mutate_sequence
from .laurent import to_text
from .modulation import (DualizingPair, ModQuiverDims, ModulationError, central_element, dual_basis,
                         semi_modulated_mutate)
from .numberfield import make_field_algebra
from .preprojective import ModulatedGraph, ResourceLimitError, graded_dims, is_dynkin
from .seeds import LaurentViolation, Seed, explore, initial_seed, verify_subcluster
from .valued_quiver import QuiverError, ValuedQuiver, mutate_quiver_sequence

EXIT_PARSE, EXIT_PRECONDITION, EXIT_RESOURCE, EXIT_LAURENT = 2, 3, 4, 5


class ParseError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _parse(builder: Callable, obj):
    try:
        return builder(obj)
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}") from exc


def _seq(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [s.strip() for s in text.split(",") if s.strip()]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# verbs return the text to emit


def cmd_matrix_mutate(obj, args) -> str:
    B = _parse(ExchangeMatrix.from_json, obj)
    try:
        seq = [int(k) for k in _seq(args.seq)]
    except ValueError as exc:
        raise ParseError(f"bad --seq: {exc}") from exc
    try:
        B2 = mutate_sequence(B, seq)
    except IndexError as exc:
        raise PreconditionError(str(exc)) from exc
    if args.format == "table":
        return str(B2) + "\n"
    if args.format == "dot":
        from .valued_quiver import from_matrix

        return from_matrix(B2).to_dot()
    return _dump(B2.to_json())


def cmd_quiver_mutate(obj, args) -> str:
    Q = _parse(ValuedQuiver.from_json, obj)
    Q2 = mutate_quiver_sequence(Q, _seq(args.seq))
    if args.format == "dot":
        return Q2.to_dot()
    if args.format == "table":
        lines = [f"{s} -> {t}  ({a},{b})" for (s, t), (a, b) in sorted(Q2.arrows.items())]
        return "\n".join(lines) + "\n"
    return _dump(Q2.to_json())


def _load_seed(obj) -> Seed:
    if "matrix" in obj:
        return Seed.from_json(obj)
    return initial_seed(ExchangeMatrix.from_json(obj), obj.get("inverted", ()))


def cmd_seed_explore(obj, args) -> str:
    S = _parse(_load_seed, obj)
    if args.max_depth < 1 or args.max_seeds < 1:
        raise PreconditionError("caps must be positive")
    g = explore(S, args.max_depth, args.max_seeds)
    if args.format == "dot":
        return g.to_dot()
    if args.format == "table":
        lines = [g.summary()] + [f"  {to_text(x)}" for x in g.variables]
        return "\n".join(lines) + "\n"
    out = g.to_json()
    out["summary"] = g.summary()
    return _dump(out)


def cmd_subcluster_check(obj, args) -> str:
    def build(o):
        parent = _load_seed(o["parent"])
        sigma = o["sigma"]
        if isinstance(sigma, dict):
            sigma = {int(k): int(v) for k, v in sigma.items()}
        return parent, sigma, int(o["p"]), [int(i) for i in o.get("inverted_sub", [])]

    parent, sigma, p, inv = _parse(build, obj)
    ok = verify_subcluster(parent, sigma, p, inv)
    if args.format == "table":
        return f"subcluster: {str(ok).lower()}\n"
    return _dump({"format": 1, "subcluster": ok})


def cmd_mod_check(obj, args) -> str:
    if "degrees" in obj:
        D = _parse(ModQuiverDims.from_json, obj)
        for k in _seq(args.seq):
            D = semi_modulated_mutate(D, k)
        if args.format == "dot":
            return D.valued_quiver().to_dot()
        return _dump(D.to_json())
    if "minpoly" in obj and "dim" not in obj:
        coeffs = _parse(lambda o: [Fraction(c) for c in o["minpoly"]], obj)
        K = make_field_algebra(coeffs)  # reducible or non-monic input is a precondition failure
        out = {"format": 1, "degree": K.degree, "traces": [str(t) for t in K.basis_traces],
               "gram": [[str(x) for x in row] for row in K.gram]}
        return _dump(out)
    P = _parse(DualizingPair.from_json, obj)
    left_basis, _ = dual_basis(P, "left")
    right_basis, _ = dual_basis(P, "right")
    out = {
        "format": 1,
        "dim": P.M.dim,
        "left_dim": P.M.left_dim,
        "right_dim": P.M.right_dim,
        "valuation": [P.M.right_dim, P.M.left_dim],
        "pair_verified": True,
        "central_terms": {"E": len(central_element(P, "E").terms), "F": len(central_element(P, "F").terms)},
        "left_basis_size": len(left_basis),
        "right_basis_size": len(right_basis),
    }
    if args.format == "table":
        return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in out.items() if k != "format")
    return _dump(out)


def cmd_preproj_dims(obj, args) -> str:
    G = _parse(ModulatedGraph.from_json, obj)
    if args.cap < 0:
        raise PreconditionError("cap must be non-negative")
    g = graded_dims(G, args.cap)
    if args.format == "table":
        return g.table()
    out = g.to_json()
    out["dynkin"] = is_dynkin(G)
    return _dump(out)


def _load_valued(obj):
    if "points" in obj and obj["points"] and isinstance(obj["points"][0], dict):
        return ModulatedGraph.from_json(obj).valued_graph()
    if "entries" in obj:
        from .valued_quiver import from_matrix

        return from_matrix(ExchangeMatrix.from_json(obj))
    return ValuedQuiver.from_json(obj)


def cmd_dynkin_check(obj, args) -> str:
    Q = _parse(_load_valued, obj)
    ok = is_dynkin(Q)
    if args.format == "table":
        return f"dynkin: {str(ok).lower()}\n"
    return _dump({"format": 1, "dynkin": ok})


VERBS: Dict[str, Callable] = {
    "matrix-mutate": cmd_matrix_mutate,
    "quiver-mutate": cmd_quiver_mutate,
    "seed-explore": cmd_seed_explore,
    "subcluster-check": cmd_subcluster_check,
    "mod-check": cmd_mod_check,
    "preproj-dims": cmd_preproj_dims,
    "dynkin-check": cmd_dynkin_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clustermod", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("--input", required=True, help="JSON input file ('-' for stdin)")
    ap.add_argument("--seq", help="comma-separated mutation sequence, e.g. 2,1,2")
    ap.add_argument("--max-depth", type=int, default=20)
    ap.add_argument("--max-seeds", type=int, default=10_000)
    ap.add_argument("--cap", type=int, default=10, help="degree cap for preproj-dims")
    ap.add_argument("--out", help="write the artifact here instead of stdout")
    ap.add_argument("--format", choices=["json", "dot", "table"], default="json")
    return ap


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_PARSE
    try:
        if args.input == "-":
            obj = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as fh:
                obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        return _error("parse", str(exc), EXIT_PARSE)
    try:
        text = VERBS[args.verb](obj, args)
    except ParseError as exc:
        return _error("parse", str(exc), EXIT_PARSE)
    except LaurentViolation as exc:
        return _error("laurent-violation (internal bug)", str(exc), EXIT_LAURENT)
    except ResourceLimitError as exc:
        return _error("resource", str(exc), EXIT_RESOURCE)
    except (PreconditionError, QuiverError, ModulationError, ValueError, IndexError) as exc:
        return _error("precondition", str(exc), EXIT_PRECONDITION)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
