"""Exact dense linear algebra over a field.

Entries can be :class:`fractions.Fraction` or any element type supporting
``+ - * /`` and comparison with ``0`` (the number-field elements of
:mod:`clustermod.numberfield` qualify).  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[list]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if not a:
        return []
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x != 0]
        out_row = []
        for col in bt:
            s = 0
            for k, x in nz:
                y = col[k]
                if y != 0:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                s = s + x * y
        out.append(s)
    return out


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form.  Returns ``(nonzero rows, pivot columns)``."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        inv = Fraction(1, pv) if isinstance(pv, int) else 1 / pv
        m[r] = [x * inv if x != 0 else x for x in m[r]]
        pr = m[r]
        nzc = [j for j in range(c, len(pr)) if pr[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    for j in nzc:
                        row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list:
    """Unique solution of ``a x = b`` for square invertible ``a``."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    one, zero = Fraction(1), Fraction(0)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return d


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of ``{x : rows x = 0}``, one vector per free column."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def quotient_map(relations: Sequence[Sequence], ncols: int, zero, one) -> Tuple[Matrix, int]:
    """Projection ``K^ncols -> K^ncols / span(relations)``.

    Quotient coordinates are the non-pivot columns of the reduced relations.
    Returns ``(pi, rank)`` with ``pi`` of shape ``(ncols - rank) x ncols``.
    """
    red, piv = rref(relations, ncols) if relations else ([], [])
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    pos = {c: i for i, c in enumerate(free)}
    pi = [[zero] * ncols for _ in free]
    for c in free:
        pi[pos[c]][c] = one
    for row, p in zip(red, piv):
        for c in free:
            x = row[c]
            if x != 0:
                pi[pos[c]][p] = -x
    return pi, len(piv)
