"""Dualizing pairs of bimodules over commutative number fields.

A :class:`Bimodule` over fields ``E`` (left) and ``F`` (right) is a
finite-dimensional rational vector space ``Q^D`` with one matrix per power
basis element of each field, acting on column vectors.  The dual
``M* = Hom_Q(M, Q)`` carries the actions ``(a.xi.e)(x) = xi(e.x.a)``, i.e.
transposed matrices with the sides swapped.

Pairings are stored as rational structure tensors: ``pair_E[c]`` is the
``D x D`` matrix of the ``c``-th power-basis coordinate of
``<x (x) xi>_E``, and ``pair_F[c]`` the matrix (rows indexed by ``M*``) of
``<xi (x) x>_F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .numberfield import RATIONALS, FieldElement, NumberField
from .valued_quiver import QuiverError, ValuedQuiver, check_mutable_at

Vector = List[Fraction]
Matrix = List[List[Fraction]]


class ModulationError(ValueError):
    pass


class SplittingHypothesisError(ModulationError):
    """Composition through ``k`` would be needed where a reverse arrow makes
    the splitting hypothesis unverifiable."""


def _zero(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def _lincomb(coeffs: Sequence[Fraction], mats: Sequence[Matrix], n: int, m: int) -> Matrix:
    out = _zero(n, m)
    for c, A in zip(coeffs, mats):
        if c:
            for i in range(n):
                row, arow = out[i], A[i]
                for j in range(m):
                    if arow[j]:
                        row[j] += c * arow[j]
    return out


def _coords(K: NumberField, c) -> Tuple[Fraction, ...]:
    if isinstance(c, FieldElement):
        return c.c
    return K(c).c


def _unit(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _module_basis(mats: Sequence[Matrix], dim: int, candidates: Optional[Sequence[Vector]] = None) -> List[Vector]:
    """Greedy basis of ``Q^dim`` as a module over the field whose basis acts
    by ``mats``: a candidate is kept when it lies outside the span generated
    so far."""
    cands = candidates if candidates is not None else [_unit(dim, i) for i in range(dim)]
    chosen: List[Vector] = []
    span: List[Vector] = []
    for v in cands:
        v = [Fraction(x) for x in v]
        if linalg.rank(span + [v], dim) == len(span) and span:
            continue
        if not any(v):
            continue
        chosen.append(v)
        span.extend(linalg.matvec(A, v) for A in mats)
        if linalg.rank(span, dim) != len(span):
            raise ModulationError("supplied vectors are not independent over the field")
        if len(span) == dim:
            break
    if len(span) != dim:
        raise ModulationError("vectors do not generate the module")
    return chosen


@dataclass(frozen=True, eq=False)
class Bimodule:
    left_alg: NumberField
    right_alg: NumberField
    dim: int
    left_action: Tuple[Matrix, ...]
    right_action: Tuple[Matrix, ...]

    def __post_init__(self):
        D = int(self.dim)
        object.__setattr__(self, "dim", D)
        L = tuple(linalg.to_fractions(A) for A in self.left_action)
        R = tuple(linalg.to_fractions(A) for A in self.right_action)
        object.__setattr__(self, "left_action", L)
        object.__setattr__(self, "right_action", R)
        E, F = self.left_alg, self.right_alg
        if len(L) != E.degree or len(R) != F.degree:
            raise ModulationError("one action matrix per algebra basis element is required")
        if any(len(A) != D or any(len(r) != D for r in A) for A in L + R):
            raise ModulationError(f"action matrices must be {D} x {D}")
        if D % E.degree or D % F.degree:
            raise ModulationError(f"dimension {D} not divisible by the algebra degrees")
        for K, acts, side in ((E, L, "left"), (F, R, "right")):
            if acts[0] != linalg.identity(D):
                raise ModulationError(f"{side} action of 1 is not the identity")
            for a in range(K.degree):
                for b in range(K.degree):
                    prod = K.mul_coords(K._red[a], K._red[b])
                    if linalg.matmul(acts[a], acts[b]) != _lincomb(prod, acts, D, D):
                        raise ModulationError(f"{side} action does not respect multiplication")
        for A in L:
            for B in R:
                if linalg.matmul(A, B) != linalg.matmul(B, A):
                    raise ModulationError("left and right actions do not commute")

    @property
    def left_dim(self) -> int:
        return self.dim // self.left_alg.degree

    @property
    def right_dim(self) -> int:
        return self.dim // self.right_alg.degree

    def left_mat(self, c) -> Matrix:
        return _lincomb(_coords(self.left_alg, c), self.left_action, self.dim, self.dim)

    def right_mat(self, c) -> Matrix:
        return _lincomb(_coords(self.right_alg, c), self.right_action, self.dim, self.dim)

    def act_left(self, c, x: Sequence) -> Vector:
        return linalg.matvec(self.left_mat(c), x)

    def act_right(self, x: Sequence, c) -> Vector:
        return linalg.matvec(self.right_mat(c), x)

    def left_basis(self, candidates=None) -> List[Vector]:
        return _module_basis(self.left_action, self.dim, candidates)

    def right_basis(self, candidates=None) -> List[Vector]:
        return _module_basis(self.right_action, self.dim, candidates)

    # constructors

    @classmethod
    def regular(cls, K: NumberField) -> "Bimodule":
        """``K`` as a ``(K, K)``-bimodule."""
        mats = [K.mul_matrix(e) for e in K._red[: K.degree]]
        return cls(K, K, K.degree, tuple(mats), tuple(mats))

    @classmethod
    def field_over(cls, K: NumberField, side: str) -> "Bimodule":
        """``K`` as a ``(K, Q)``-bimodule (side "left") or ``(Q, K)`` (side "right")."""
        mats = tuple(K.mul_matrix(e) for e in K._red[: K.degree])
        ident = (linalg.identity(K.degree),)
        if side == "left":
            return cls(K, RATIONALS, K.degree, mats, ident)
        if side == "right":
            return cls(RATIONALS, K, K.degree, ident, mats)
        raise ValueError("side must be 'left' or 'right'")

    @classmethod
    def trivial(cls, dim: int) -> "Bimodule":
        """``Q^dim`` as a ``(Q, Q)``-bimodule."""
        ident = (linalg.identity(dim),)
        return cls(RATIONALS, RATIONALS, dim, ident, ident)

    def direct_sum(self, other: "Bimodule") -> "Bimodule":
        if self.left_alg != other.left_alg or self.right_alg != other.right_alg:
            raise ModulationError("direct sum needs equal algebras")
        D1, D2 = self.dim, other.dim

        def block(A, B):
            return [list(r) + [Fraction(0)] * D2 for r in A] + [[Fraction(0)] * D1 + list(r) for r in B]

        return Bimodule(self.left_alg, self.right_alg, D1 + D2,
                        tuple(block(A, B) for A, B in zip(self.left_action, other.left_action)),
                        tuple(block(A, B) for A, B in zip(self.right_action, other.right_action)))

    def to_json(self) -> dict:
        def enc(A):
            return [[str(x) for x in row] for row in A]

        return {
            "format": 1,
            "left": self.left_alg.to_json(),
            "right": self.right_alg.to_json(),
            "dim": self.dim,
            "left_action": [enc(A) for A in self.left_action],
            "right_action": [enc(A) for A in self.right_action],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Bimodule":
        def dec(A):
            return [[Fraction(x) for x in row] for row in A]

        return cls(_field_from_json(obj["left"]), _field_from_json(obj["right"]), int(obj["dim"]),
                   tuple(dec(A) for A in obj["left_action"]), tuple(dec(A) for A in obj["right_action"]))


def _field_from_json(obj) -> NumberField:
    K = NumberField.from_json(obj)
    return RATIONALS if K == RATIONALS else K


def dual_bimodule(M: Bimodule) -> Bimodule:
    """``Hom_Q(M, Q)`` as an ``(F, E)``-bimodule, in the dual coordinate basis."""
    return Bimodule(M.right_alg, M.left_alg, M.dim,
                    tuple(linalg.transpose(A) for A in M.right_action),
                    tuple(linalg.transpose(A) for A in M.left_action))


class TensorProduct:
    """``M (x)_K N`` for ``M`` a right and ``N`` a left ``K``-module.

    A right ``K``-basis ``y_1..y_r`` of ``M`` identifies the product with
    ``N^r``; coordinate ``(l, q)`` (flattened as ``l * dim N + q``) is the
    pure tensor ``y_l (x) e_q``.
    """

    def __init__(self, M: Bimodule, N: Bimodule):
        K = M.right_alg
        if N.left_alg != K:
            raise ModulationError("tensor product over mismatched algebras")
        self.M, self.N, self.K = M, N, K
        self.basis = M.right_basis()
        self.r = len(self.basis)
        d = K.degree
        cols = [linalg.matvec(M.right_action[b], y) for y in self.basis for b in range(d)]
        self._to_coef = linalg.inverse(linalg.transpose(cols))
        self.dim = self.r * N.dim
        # induced actions
        left = []
        for A in M.left_action:
            blocks = [self.coords(linalg.matvec(A, y)) for y in self.basis]
            mat = _zero(self.dim, self.dim)
            for l, cl in enumerate(blocks):  # image of y_l
                for lp, c in enumerate(cl):
                    if any(c):
                        Nc = N.left_mat(c)
                        for q in range(N.dim):
                            for qq in range(N.dim):
                                if Nc[q][qq]:
                                    mat[lp * N.dim + q][l * N.dim + qq] = Nc[q][qq]
            left.append(mat)
        right = []
        for A in N.right_action:
            mat = _zero(self.dim, self.dim)
            for l in range(self.r):
                for q in range(N.dim):
                    for qq in range(N.dim):
                        if A[q][qq]:
                            mat[l * N.dim + q][l * N.dim + qq] = A[q][qq]
            right.append(mat)
        self.bimodule = Bimodule(M.left_alg, N.right_alg, self.dim, tuple(left), tuple(right))

    def coords(self, x: Sequence) -> List[Tuple[Fraction, ...]]:
        """``x = sum_l y_l . c_l``; returns the ``K``-coordinates ``c_l``."""
        flat = linalg.matvec(self._to_coef, x)
        d = self.K.degree
        return [tuple(flat[l * d:(l + 1) * d]) for l in range(self.r)]

    def pure(self, x: Sequence, n: Sequence) -> Vector:
        """Coordinates of ``x (x) n``."""
        out: Vector = []
        for c in self.coords(x):
            out.extend(linalg.matvec(self.N.left_mat(c), n) if any(c) else [Fraction(0)] * self.N.dim)
        return out

    def factor(self, idx: int) -> Tuple[Vector, Vector]:
        l, q = divmod(idx, self.N.dim)
        return self.basis[l], _unit(self.N.dim, q)


@dataclass(frozen=True, eq=False)
class DualizingPair:
    M: Bimodule
    Mdual: Bimodule
    pair_E: Tuple[Matrix, ...]  # [c][p][q]: coordinate c of <x_p (x) xi_q>_E
    pair_F: Tuple[Matrix, ...]  # [c][q][p]: coordinate c of <xi_q (x) x_p>_F

    def __post_init__(self):
        object.__setattr__(self, "pair_E", tuple(linalg.to_fractions(A) for A in self.pair_E))
        object.__setattr__(self, "pair_F", tuple(linalg.to_fractions(A) for A in self.pair_F))
        self.verify()

    @property
    def E(self) -> NumberField:
        return self.M.left_alg

    @property
    def F(self) -> NumberField:
        return self.M.right_alg

    def pairing_E(self, x: Sequence, xi: Sequence) -> FieldElement:
        return self.E([_bilinear(x, P, xi) for P in self.pair_E])

    def pairing_F(self, xi: Sequence, x: Sequence) -> FieldElement:
        return self.F([_bilinear(xi, P, x) for P in self.pair_F])

    def trace_matrix_E(self) -> Matrix:
        return _lincomb(self.E.basis_traces, self.pair_E, self.M.dim, self.M.dim)

    def trace_matrix_F(self) -> Matrix:
        return _lincomb(self.F.basis_traces, self.pair_F, self.M.dim, self.M.dim)

    def verify(self) -> None:
        """Re-check every pair invariant; raises :class:`ModulationError`."""
        M, Md, E, F = self.M, self.Mdual, self.E, self.F
        D = M.dim
        if Md.left_alg != F or Md.right_alg != E or Md.dim != D:
            raise ModulationError("dual bimodule has the wrong algebras or dimension")
        if len(self.pair_E) != E.degree or len(self.pair_F) != F.degree:
            raise ModulationError("pairing tensors have the wrong number of components")
        tE, tF = self.trace_matrix_E(), self.trace_matrix_F()
        if linalg.rank(tE, D) != D or linalg.rank(tF, D) != D:
            raise ModulationError("pairing is degenerate")
        if tE != linalg.transpose(tF):
            raise ModulationError("pairings are not symmetrizable by the traces")
        T = linalg.transpose
        PE, PF = self.pair_E, self.pair_F
        for a in range(E.degree):
            mult = [E.mul_coords(E._red[a], E._red[c]) for c in range(E.degree)]
            for cp in range(E.degree):
                want = _lincomb([mult[c][cp] for c in range(E.degree)], PE, D, D)
                if linalg.matmul(T(M.left_action[a]), PE[cp]) != want:
                    raise ModulationError("E-pairing is not left E-linear")
                if linalg.matmul(PE[cp], Md.right_action[a]) != want:
                    raise ModulationError("E-pairing is not right E-linear")
            for c in range(F.degree):
                if linalg.matmul(T(Md.right_action[a]), PF[c]) != linalg.matmul(PF[c], M.left_action[a]):
                    raise ModulationError("F-pairing is not E-balanced")
        for b in range(F.degree):
            mult = [F.mul_coords(F._red[b], F._red[c]) for c in range(F.degree)]
            for cp in range(F.degree):
                want = _lincomb([mult[c][cp] for c in range(F.degree)], PF, D, D)
                if linalg.matmul(T(Md.left_action[b]), PF[cp]) != want:
                    raise ModulationError("F-pairing is not left F-linear")
                if linalg.matmul(PF[cp], M.right_action[b]) != want:
                    raise ModulationError("F-pairing is not right F-linear")
            for c in range(E.degree):
                if linalg.matmul(T(M.right_action[b]), PE[c]) != linalg.matmul(PE[c], Md.left_action[b]):
                    raise ModulationError("E-pairing is not F-balanced")

    def swapped(self) -> "DualizingPair":
        """The same pair read from the other side: ``(M*, M)``."""
        return DualizingPair(self.Mdual, self.M, self.pair_F, self.pair_E)

    def to_json(self) -> dict:
        def enc(A):
            return [[str(x) for x in row] for row in A]

        return {
            "format": 1,
            "M": self.M.to_json(),
            "Mdual": self.Mdual.to_json(),
            "pair_E": [enc(A) for A in self.pair_E],
            "pair_F": [enc(A) for A in self.pair_F],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DualizingPair":
        if "Mdual" not in obj:
            return make_dualizing_pair(Bimodule.from_json(obj.get("M", obj)))

        def dec(A):
            return [[Fraction(x) for x in row] for row in A]

        return cls(Bimodule.from_json(obj["M"]), Bimodule.from_json(obj["Mdual"]),
                   tuple(dec(A) for A in obj["pair_E"]), tuple(dec(A) for A in obj["pair_F"]))


def _bilinear(u: Sequence, P: Matrix, v: Sequence) -> Fraction:
    s = Fraction(0)
    for i, ui in enumerate(u):
        if ui:
            row = P[i]
            for j, vj in enumerate(v):
                if vj and row[j]:
                    s += ui * row[j] * vj
    return s


def make_dualizing_pair(M: Bimodule) -> DualizingPair:
    """Pair ``M`` with its rational dual; the pairings are the unique
    algebra-valued forms whose traces give the evaluation ``xi(x)``."""
    E, F, D = M.left_alg, M.right_alg, M.dim
    Md = dual_bimodule(M)
    # <x_p (x) xi_q>_E = u with t(e_a u) = xi_q(e_a x_p) = L_a[q][p]
    GE = E.gram_inverse
    pair_E = tuple(
        [[sum((GE[c][a] * M.left_action[a][q][p] for a in range(E.degree)), Fraction(0)) for q in range(D)]
         for p in range(D)]
        for c in range(E.degree))
    GF = F.gram_inverse
    pair_F = tuple(
        [[sum((GF[c][b] * M.right_action[b][q][p] for b in range(F.degree)), Fraction(0)) for p in range(D)]
         for q in range(D)]
        for c in range(F.degree))
    return DualizingPair(M, Md, pair_E, pair_F)


def dual_basis(P: DualizingPair, side: str, basis: Optional[Sequence[Vector]] = None) -> Tuple[List[Vector], List[Vector]]:
    """Return ``(basis, duals)``.

    ``side="left"``: ``basis`` is a left ``E``-basis ``m_k`` of ``M`` and
    ``<m_k (x) m*_l>_E = delta_kl``.  ``side="right"``: a right ``F``-basis
    ``z_k`` with ``<z*_l (x) z_k>_F = delta_lk``.
    """
    M = P.M
    D = M.dim
    if side == "left":
        basis = M.left_basis(basis) if basis is not None else M.left_basis()
        K, forms = P.E, P.pair_E
        rows = [[_bilinear(m, Pc, _unit(D, q)) for q in range(D)] for m in basis for Pc in forms]
    elif side == "right":
        basis = M.right_basis(basis) if basis is not None else M.right_basis()
        K, forms = P.F, P.pair_F
        rows = [linalg.matvec(Pc, z) for z in basis for Pc in forms]
    else:
        raise ValueError("side must be 'left' or 'right'")
    if len(rows) != D:
        raise ModulationError("basis has the wrong size")
    try:
        inv = linalg.inverse(rows)
    except ZeroDivisionError as exc:
        raise ModulationError("singular Gram matrix: pair data corrupted") from exc
    d = K.degree
    duals = [[inv[i][l * d] for i in range(D)] for l in range(len(basis))]
    return [list(b) for b in basis], duals


@dataclass
class CentralElement:
    side: str
    terms: List[Tuple[Vector, Vector]]
    coords: Vector
    tensor: TensorProduct


def central_element(P: DualizingPair, side: str = "E", basis: Optional[Sequence[Vector]] = None) -> CentralElement:
    """``sum y (x) y*`` in ``M (x)_F M*`` (side "E", right ``F``-basis) or
    ``sum x* (x) x`` in ``M* (x)_E M`` (side "F", left ``E``-basis)."""
    if side == "E":
        ys, duals = dual_basis(P, "right", basis)
        T = TensorProduct(P.M, P.Mdual)
        terms = list(zip(ys, duals))
    elif side == "F":
        xs, duals = dual_basis(P, "left", basis)
        T = TensorProduct(P.Mdual, P.M)
        terms = list(zip(duals, xs))
    else:
        raise ValueError("side must be 'E' or 'F'")
    coords = [Fraction(0)] * T.dim
    for a, b in terms:
        for i, v in enumerate(T.pure(a, b)):
            coords[i] += v
    return CentralElement(side, terms, coords, T)


def hom_space(S: Bimodule, T: Bimodule, side: str = "left") -> List[Matrix]:
    """Basis of the rational matrices ``S -> T`` that are linear over the
    left (or right) algebra shared by ``S`` and ``T``."""
    if side == "left":
        if S.left_alg != T.left_alg:
            raise ModulationError("modules over different algebras")
        pairs = list(zip(S.left_action, T.left_action))
    else:
        if S.right_alg != T.right_alg:
            raise ModulationError("modules over different algebras")
        pairs = list(zip(S.right_action, T.right_action))
    ds, dt = S.dim, T.dim
    nvar = dt * ds
    eqs = []
    for A, B in pairs:  # u A - B u = 0
        for i in range(dt):
            for j in range(ds):
                row = [Fraction(0)] * nvar
                for k in range(ds):
                    if A[k][j]:
                        row[i * ds + k] += A[k][j]
                for k in range(dt):
                    if B[i][k]:
                        row[k * ds + j] -= B[i][k]
                eqs.append(row)
    return [[v[i * ds:(i + 1) * ds] for i in range(dt)] for v in linalg.nullspace(eqs, nvar)]


def adjoint(u: Matrix, P: DualizingPair, X: Bimodule, Y: Bimodule, side: str = "left") -> Matrix:
    """Transpose a map across the tensor-hom adjunction.

    side "left": ``u : M (x)_F X -> Y`` (``E``-linear) becomes
    ``X -> M* (x)_E Y``, ``x -> sum_k m^_k (x) u(m_k (x) x)``.
    side "right": ``u : X (x)_E M -> Y`` (``F``-linear) becomes
    ``X -> Y (x)_F M*``, ``x -> sum_k u(x (x) z_k) (x) z^_k``.
    Matrices act on tensor-product coordinates as in :class:`TensorProduct`.
    """
    if side == "left":
        src, tgt = TensorProduct(P.M, X), TensorProduct(P.Mdual, Y)
        basis, duals = dual_basis(P, "left")
    elif side == "right":
        src, tgt = TensorProduct(X, P.M), TensorProduct(Y, P.Mdual)
        basis, duals = dual_basis(P, "right")
    else:
        raise ValueError("side must be 'left' or 'right'")
    if len(u) != Y.dim or any(len(r) != src.dim for r in u):
        raise ModulationError(f"u must be {Y.dim} x {src.dim}")
    cols = []
    for j in range(X.dim):
        x = _unit(X.dim, j)
        col = [Fraction(0)] * tgt.dim
        for m, mh in zip(basis, duals):
            if side == "left":
                img = linalg.matvec(u, src.pure(m, x))
                vec = tgt.pure(mh, img)
            else:
                img = linalg.matvec(u, src.pure(x, m))
                vec = tgt.pure(img, mh)
            for i, v in enumerate(vec):
                col[i] += v
        cols.append(col)
    return linalg.transpose(cols)


def unadjoint(ubar: Matrix, P: DualizingPair, X: Bimodule, Y: Bimodule, side: str = "left") -> Matrix:
    """Inverse of :func:`adjoint`, by contracting against the pairing."""
    if side == "left":
        src, tgt = TensorProduct(P.M, X), TensorProduct(P.Mdual, Y)
    elif side == "right":
        src, tgt = TensorProduct(X, P.M), TensorProduct(Y, P.Mdual)
    else:
        raise ValueError("side must be 'left' or 'right'")
    cols = []
    for idx in range(src.dim):
        a, b = src.factor(idx)
        # side left: a in M, b in X; side right: a in X, b in M
        img = linalg.matvec(ubar, b if side == "left" else a)
        out = [Fraction(0)] * Y.dim
        for t, c in enumerate(img):
            if not c:
                continue
            f, g = tgt.factor(t)
            if side == "left":  # f in M*, g in Y
                w = Y.act_left(P.pairing_E(a, f), g)
            else:  # f in Y, g in M*
                w = Y.act_right(f, P.pairing_F(g, b))
            for i, v in enumerate(w):
                out[i] += c * v
        cols.append(out)
    return linalg.transpose(cols)


def product_pair(P12: DualizingPair, P23: DualizingPair) -> DualizingPair:
    """The pair on ``M1 (x) M2`` with dual ``M2* (x) M1*`` and forms
    ``e13((x(x)y)(x)(v(x)u)) = e12(x (x) e23(y(x)v).u)`` and
    ``e31((v(x)u)(x)(x(x)y)) = e32(v (x) e21(u(x)x).y)``."""
    if P12.F != P23.E:
        raise ModulationError("right algebra of the first pair differs from left algebra of the second")
    T = TensorProduct(P12.M, P23.M)
    Td = TensorProduct(P23.Mdual, P12.Mdual)
    D = T.dim
    if Td.dim != D:
        raise ModulationError("tensor dimensions disagree")
    k1, k3 = P12.E, P23.F
    pe = [[None] * D for _ in range(D)]
    pf = [[None] * D for _ in range(D)]
    for p in range(D):
        x, y = T.factor(p)
        for q in range(D):
            v, u = Td.factor(q)
            c = P23.pairing_E(y, v)
            pe[p][q] = P12.pairing_E(x, P12.Mdual.act_left(c, u)).c
            d = P12.pairing_F(u, x)
            pf[q][p] = P23.pairing_F(v, P23.M.act_left(d, y)).c
    pair_E = tuple([[pe[p][q][c] for q in range(D)] for p in range(D)] for c in range(k1.degree))
    pair_F = tuple([[pf[q][p][c] for p in range(D)] for q in range(D)] for c in range(k3.degree))
    return DualizingPair(T.bimodule, Td.bimodule, pair_E, pair_F)


# dimension-level modulated quivers


@dataclass(frozen=True, eq=False)
class ModQuiverDims:
    """Points with field degrees ``n_i`` and, per arrow ``i -> j``, the left
    dimension ``dim_{k_i} B_ij``.  The right dimension is
    ``dim_{k_j} B_ij = left * n_i / n_j``; the underlying valuation is
    ``(d_ij, d_ji) = (dim_{k_j} B_ij, dim_{k_i} B_ij)``.
    """

    points: Tuple[str, ...]
    degrees: Dict[str, int]
    left_dims: Dict[Tuple[str, str], int]
    frozen: frozenset = frozenset()
    extended: bool = False

    def __post_init__(self):
        pts = tuple(str(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        deg = {str(p): int(v) for p, v in self.degrees.items()}
        object.__setattr__(self, "degrees", deg)
        dims = {(str(s), str(t)): int(v) for (s, t), v in self.left_dims.items() if int(v) != 0}
        object.__setattr__(self, "left_dims", dims)
        object.__setattr__(self, "frozen", frozenset(str(p) for p in self.frozen))
        if set(deg) != set(pts) or any(v <= 0 for v in deg.values()):
            raise ModulationError("every point needs a positive degree")
        for (s, t), v in dims.items():
            if s not in deg or t not in deg or s == t:
                raise ModulationError(f"bad arrow {s}->{t}")
            if v < 0 or (v * deg[s]) % deg[t]:
                raise ModulationError(f"left dimension {v} on {s}->{t} gives no integral right dimension")

    def right_dim(self, s: str, t: str) -> int:
        return self.left_dims[(s, t)] * self.degrees[s] // self.degrees[t]

    def valued_quiver(self) -> ValuedQuiver:
        arrows = {(s, t): (self.right_dim(s, t), v) for (s, t), v in self.left_dims.items()}
        return ValuedQuiver(self.points, arrows, self.frozen, self.degrees, self.extended)

    def to_json(self) -> dict:
        return {
            "format": 1,
            "points": list(self.points),
            "degrees": {p: self.degrees[p] for p in self.points},
            "arrows": [{"from": s, "to": t, "left_dim": v} for (s, t), v in sorted(self.left_dims.items())],
            "frozen": [p for p in self.points if p in self.frozen],
            "extended": self.extended,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModQuiverDims":
        return cls(tuple(obj["points"]), dict(obj["degrees"]),
                   {(a["from"], a["to"]): a["left_dim"] for a in obj.get("arrows", [])},
                   frozenset(obj.get("frozen", ())), bool(obj.get("extended", False)))


def semi_modulated_mutate(D: ModQuiverDims, k) -> ModQuiverDims:
    """Reverse arrows at ``k`` (the reversed arrow carries the dual
    bimodule, whose left dimension is the old right dimension) and add
    ``B_ik (x) B_kj`` to ``B_ij`` for every path ``i -> k -> j``."""
    k = str(k)
    Q = D.valued_quiver()
    try:
        if not check_mutable_at(Q, k):
            raise ModulationError(f"point {k} lies on a 2-cycle")
    except QuiverError as exc:
        raise ModulationError(str(exc)) from exc
    ins = [s for (s, t) in D.left_dims if t == k]
    outs = [t for (s, t) in D.left_dims if s == k]
    for i in ins:
        for j in outs:
            if (j, i) in D.left_dims:
                raise SplittingHypothesisError(
                    f"arrow {j}->{i} closes the triple ({i},{k},{j}): splitting hypothesis unverifiable")
    new: Dict[Tuple[str, str], int] = {}
    for (s, t), v in D.left_dims.items():
        if s == k or t == k:
            new[(t, s)] = D.right_dim(s, t)
        else:
            new[(s, t)] = v
    for i in ins:
        for j in outs:
            new[(i, j)] = new.get((i, j), 0) + D.left_dims[(i, k)] * D.left_dims[(k, j)]
    if D.extended:
        new = {a: v for a, v in new.items() if not (a[0] in D.frozen and a[1] in D.frozen)}
    return ModQuiverDims(D.points, D.degrees, new, D.frozen, D.extended)
