"""Skew-symmetrizable exchange matrices and matrix mutation.

Indices are 1-based at the public surface (``mutate_matrix(B, k)`` with
``1 <= k <= n``); storage is a tuple of row tuples, 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple


def sign(a: int) -> int:
    return (a > 0) - (a < 0)


def common_sign(a: int, b: int) -> int:
    """``sign(sign(a) + sign(b))``: nonzero only when a and b agree in sign
    (or one of them is zero)."""
    return sign(sign(a) + sign(b))


def solve_symmetrizer(size: int, constraints: Iterable[Tuple[int, int, int, int]]) -> Optional[List[int]]:
    """Minimal positive integer weights ``w`` with ``a * w[j] == c * w[i]``
    for every constraint ``(i, j, a, c)``.

    Weights are normalised per connected component so that the component
    gcd is 1; isolated indices get weight 1.  Returns None when no positive
    solution exists (a non-positive ratio or an inconsistent cycle).
    """
    adj: List[List[Tuple[int, Fraction]]] = [[] for _ in range(size)]
    for i, j, a, c in constraints:
        if a <= 0 or c <= 0:
            return None
        # w[j] = (c / a) * w[i]
        adj[i].append((j, Fraction(c, a)))
        adj[j].append((i, Fraction(a, c)))
    weights: List[Optional[Fraction]] = [None] * size
    result = [0] * size
    for root in range(size):
        if weights[root] is not None:
            continue
        weights[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j, r in adj[i]:
                w = weights[i] * r
                if weights[j] is None:
                    weights[j] = w
                    comp.append(j)
                    stack.append(j)
                elif weights[j] != w:
                    return None
        den = lcm(*(weights[i].denominator for i in comp))
        ints = [int(weights[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            result[i] = v // g
    return result


@dataclass(frozen=True)
class Symmetrizer:
    diag: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(int(x) for x in self.diag))
        if any(x <= 0 for x in self.diag):
            raise ValueError("symmetrizer entries must be positive")

    def symmetrizes(self, B: "ExchangeMatrix") -> bool:
        n = B.n
        if len(self.diag) != n:
            return False
        d = self.diag
        return all(B.entries[i][j] * d[j] == -B.entries[j][i] * d[i] for i in range(n) for j in range(n))

    def to_json(self) -> dict:
        return {"diag": list(self.diag)}

    @classmethod
    def from_json(cls, obj: dict) -> "Symmetrizer":
        return cls(tuple(obj["diag"]))


def _rows(B) -> Tuple[Tuple[int, ...], ...]:
    if isinstance(B, ExchangeMatrix):
        return B.entries
    return tuple(tuple(int(x) for x in row) for row in B)


def find_symmetrizer(B, n: Optional[int] = None) -> Optional[Symmetrizer]:
    """Canonical minimal symmetrizer of the principal part, or None.

    ``B`` may be an :class:`ExchangeMatrix` or a raw list of rows (then
    ``n`` defaults to the column count).
    """
    rows = _rows(B)
    if isinstance(B, ExchangeMatrix):
        n = B.n
    elif n is None:
        n = len(rows[0]) if rows else 0
    cons = []
    for i in range(n):
        if rows[i][i] != 0:
            return None
        for j in range(i + 1, n):
            bij, bji = rows[i][j], rows[j][i]
            if bij == 0 and bji == 0:
                continue
            if sign(bij) != -sign(bji):
                return None
            # bij * n_j == -bji * n_i
            cons.append((i, j, abs(bij), abs(bji)))
    w = solve_symmetrizer(n, cons)
    return None if w is None else Symmetrizer(tuple(w))


@dataclass(frozen=True)
class ExchangeMatrix:
    """An ``m x n`` integer matrix whose top ``n x n`` block is
    skew-symmetrizable.  Rows ``n+1..m`` belong to frozen indices."""

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows:
            raise ValueError("empty exchange matrix")
        n = len(rows[0])
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("ragged or zero-width exchange matrix")
        if len(rows) < n:
            raise ValueError(f"need m >= n, got {len(rows)} x {n}")
        sym = find_symmetrizer(rows, n)
        if sym is None:
            raise ValueError("principal part is not skew-symmetrizable")
        object.__setattr__(self, "_symmetrizer", sym)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def symmetrizer(self) -> Symmetrizer:
        return self._symmetrizer  # type: ignore[attr-defined]

    def principal(self) -> Tuple[Tuple[int, ...], ...]:
        return self.entries[: self.n]

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        """1-based entry access: ``B[i, j]``."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def permuted(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Relabel mutable indices: new index ``a`` is old index ``perm[a]``
        (0-based).  Frozen rows keep their order."""
        n, m = self.n, self.m
        rowmap = list(perm) + list(range(n, m))
        return ExchangeMatrix(tuple(tuple(self.entries[rowmap[a]][perm[b]] for b in range(n)) for a in range(m)))

    def to_json(self) -> dict:
        return {"format": 1, "n": self.n, "m": self.m, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "ExchangeMatrix":
        B = cls(tuple(tuple(r) for r in obj["entries"]))
        if "n" in obj and obj["n"] != B.n or "m" in obj and obj["m"] != B.m:
            raise ValueError("declared n/m disagree with entries")
        return B

    def __str__(self) -> str:
        w = max(len(str(x)) for r in self.entries for x in r)
        return "\n".join(" ".join(str(x).rjust(w) for x in r) for r in self.entries)


def mutate_matrix(B: ExchangeMatrix, k: int) -> ExchangeMatrix:
    if not 1 <= k <= B.n:
        raise IndexError(f"mutation index {k} outside 1..{B.n}")
    k -= 1
    e = B.entries
    out = []
    for i, row in enumerate(e):
        bik = row[k]
        new = []
        for j, bij in enumerate(row):
            if i == k or j == k:
                new.append(-bij)
            else:
                bkj = e[k][j]
                new.append(bij + common_sign(bik, bkj) * bik * bkj)
        out.append(tuple(new))
    return ExchangeMatrix(tuple(out))


def mutate_sequence(B: ExchangeMatrix, seq: Iterable[int]) -> ExchangeMatrix:
    for k in seq:
        B = mutate_matrix(B, k)
    return B
