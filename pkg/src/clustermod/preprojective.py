"""Preprojective algebras of modulated graphs: graded dimensions of
``T(G) / <rho>`` by exact elimination, and the Dynkin criterion.

Degree-``m`` pieces are built one layer at a time.  For every vertex ``t``
the space ``L_m(t)`` (paths of length ``m`` ending at ``t``, modulo the
relations) is kept as a right ``k_t``-vector space with coordinates, and

    L_m(t) = (sum over arrows s -> t of L_{m-1}(s) (x) B_st) / L_{m-2}(t) . rho_t

where each bimodule ``B_st`` is written in a right ``k_t``-basis with the
left ``k_s``-action as matrices over ``k_t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .modulation import Bimodule, DualizingPair, ModulationError, TensorProduct, dual_basis, make_dualizing_pair
from .numberfield import RATIONALS, FieldElement, NumberField
from .valued_quiver import ValuedQuiver


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class ModulatedGraph:
    """Points with fields ``k_i`` and one oriented edge per unordered pair,
    carrying the dualizing pair ``{B_ij, B_ji}``."""

    fields: Dict[str, NumberField]
    edges: Tuple[Tuple[str, str, DualizingPair], ...] = ()

    def __post_init__(self):
        fields_ = {str(p): K for p, K in self.fields.items()}
        object.__setattr__(self, "fields", fields_)
        edges = tuple((str(i), str(j), P) for i, j, P in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, j, P in edges:
            if i not in fields_ or j not in fields_:
                raise ModulationError(f"edge {i}-{j} touches an unknown point")
            if i == j:
                raise ModulationError(f"loop at {i}")
            key = frozenset((i, j))
            if key in seen:
                raise ModulationError(f"more than one edge between {i} and {j}")
            seen.add(key)
            if P.E != fields_[i] or P.F != fields_[j]:
                raise ModulationError(f"edge {i}-{j}: bimodule algebras do not match the point fields")

    @property
    def points(self) -> Tuple[str, ...]:
        return tuple(self.fields)

    def degree(self, p: str) -> int:
        return self.fields[p].degree

    def valued_graph(self) -> ValuedQuiver:
        """Underlying valued quiver, ``(d_ij, d_ji) = (dim_{k_j} B_ij, dim_{k_i} B_ij)``."""
        arrows = {(i, j): (P.M.right_dim, P.M.left_dim) for i, j, P in self.edges}
        return ValuedQuiver(self.points, arrows, frozenset(), {p: self.degree(p) for p in self.points})

    def reoriented(self, flip: Sequence[Tuple[str, str]]) -> "ModulatedGraph":
        """Reverse the listed edges, keeping the same pair of bimodules."""
        flip = {frozenset(map(str, e)) for e in flip}
        edges = tuple((j, i, P.swapped()) if frozenset((i, j)) in flip else (i, j, P) for i, j, P in self.edges)
        return ModulatedGraph(self.fields, edges)

    def to_json(self) -> dict:
        return {
            "format": 1,
            "points": [{"name": p, "minpoly": [str(c) for c in K.minpoly]} for p, K in self.fields.items()],
            "edges": [{"from": i, "to": j, "bimodule": P.M.to_json()} for i, j, P in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModulatedGraph":
        fields_ = {}
        for p in obj["points"]:
            K = NumberField.from_json(p["minpoly"])
            fields_[str(p["name"])] = RATIONALS if K == RATIONALS else K
        edges = []
        for e in obj.get("edges", []):
            if "bimodule" in e:
                P = make_dualizing_pair(Bimodule.from_json(e["bimodule"]))
            elif "pair" in e:
                P = DualizingPair.from_json(e["pair"])
            else:
                i, j = str(e["from"]), str(e["to"])
                P = realize_edge(fields_[i], fields_[j], tuple(e["valuation"]))
            edges.append((e["from"], e["to"], P))
        return cls(fields_, tuple(edges))


def realize_edge(ki: NumberField, kj: NumberField, valuation: Tuple[int, int]) -> DualizingPair:
    """A standard bimodule ``B_ij`` with ``(dim_{k_j} B, dim_{k_i} B) = valuation``.

    Supported shapes: one side rational (``B`` a free module over the other
    field) or ``k_i = k_j`` (``B`` a free ``(k, k)``-bimodule).
    """
    dij, dji = int(valuation[0]), int(valuation[1])
    if dij <= 0 or dji <= 0:
        raise ModulationError("valuation entries must be positive")
    if ki == kj:
        if dij != dji:
            raise ModulationError("equal fields need a symmetric valuation")
        base = Bimodule.regular(ki) if ki.degree > 1 else Bimodule.trivial(1)
        n = dij
    elif ki.degree == 1:
        if dji != dij * kj.degree:
            raise ModulationError(f"valuation {valuation} impossible between Q and a degree-{kj.degree} field")
        base, n = Bimodule.field_over(kj, "right"), dij
    elif kj.degree == 1:
        if dij != dji * ki.degree:
            raise ModulationError(f"valuation {valuation} impossible between a degree-{ki.degree} field and Q")
        base, n = Bimodule.field_over(ki, "left"), dji
    else:
        raise ModulationError("no standard bimodule between two distinct non-rational fields")
    B = base
    for _ in range(n - 1):
        B = B.direct_sum(base)
    return make_dualizing_pair(B)


def graph_from_valuations(fields_: Dict[str, NumberField], edges: Sequence[Tuple[str, str, Tuple[int, int]]]) -> ModulatedGraph:
    return ModulatedGraph(dict(fields_), tuple((i, j, realize_edge(fields_[str(i)], fields_[str(j)], v))
                                               for i, j, v in edges))


# scalars: Fraction for rational vertices, FieldElement otherwise


def _scalar(K: NumberField, coords: Sequence[Fraction]):
    return Fraction(coords[0]) if K.degree == 1 else K(coords)


def _coords(x) -> Tuple[Fraction, ...]:
    return (x,) if isinstance(x, Fraction) else x.c


class _RightFree:
    """A bimodule ``X`` over ``(k_s, k_t)`` in a right ``k_t``-basis."""

    def __init__(self, X: Bimodule, basis: Sequence[Sequence[Fraction]]):
        self.X, self.Ks, self.Kt = X, X.left_alg, X.right_alg
        self.basis = [list(b) for b in basis]
        self.size = len(self.basis)
        d = self.Kt.degree
        cols = [linalg.matvec(X.right_action[b], y) for y in self.basis for b in range(d)]
        self._to_coef = linalg.inverse(linalg.transpose(cols))
        # left action of each power-basis element of k_s as a matrix over k_t
        self.phi = []
        for A in X.left_action:
            images = [self.coords(linalg.matvec(A, y)) for y in self.basis]
            self.phi.append([[images[c][r] for c in range(self.size)] for r in range(self.size)])

    def coords(self, x: Sequence[Fraction]) -> list:
        flat = linalg.matvec(self._to_coef, x)
        d = self.Kt.degree
        return [_scalar(self.Kt, flat[l * d:(l + 1) * d]) for l in range(self.size)]

    def left_matrix(self, c) -> list:
        """Matrix over ``k_t`` of left multiplication by ``c`` in ``k_s``."""
        cs = _coords(c)
        n = self.size
        zero = _scalar(self.Kt, [Fraction(0)] * self.Kt.degree)
        out = [[zero] * n for _ in range(n)]
        for a, ca in enumerate(cs):
            if ca:
                P = self.phi[a]
                for r in range(n):
                    for q in range(n):
                        if P[r][q] != 0:
                            out[r][q] = out[r][q] + ca * P[r][q]
        return out


@dataclass
class _Arrow:
    s: str
    t: str
    pair: DualizingPair  # pair.M = B_st, pair.Mdual = B_ts
    free: _RightFree  # B_st in a right k_t-basis
    duals: List[List[Fraction]]  # y*_tau in B_ts, rational coordinates


@dataclass
class Relation:
    """``rho = sum over vertices s and arrows s -> t of sum_tau y_tau (x) y*_tau``.

    ``components[s][t]`` holds the coordinates of the ``s -> t -> s`` part
    in ``B_st (x)_{k_t} B_ts`` (see :class:`~clustermod.modulation.TensorProduct`)."""

    components: Dict[str, Dict[str, List[Fraction]]]
    tensors: Dict[Tuple[str, str], TensorProduct]
    terms: Dict[Tuple[str, str], List[Tuple[List[Fraction], List[Fraction]]]]

    def is_zero(self) -> bool:
        return not any(any(v) for comp in self.components.values() for v in comp.values())

    def is_central(self) -> bool:
        """``c . rho_s = rho_s . c`` for every power-basis element ``c`` of ``k_s``."""
        for (s, t), T in self.tensors.items():
            v = self.components[s][t]
            B = T.bimodule
            for a in range(B.left_alg.degree):
                if linalg.matvec(B.left_action[a], v) != linalg.matvec(B.right_action[a], v):
                    return False
        return True


def _arrows(G: ModulatedGraph) -> List[_Arrow]:
    out = []
    for i, j, P in G.edges:
        for s, t, Q in ((i, j, P), (j, i, P.swapped())):
            basis, duals = dual_basis(Q, "right")
            out.append(_Arrow(s, t, Q, _RightFree(Q.M, basis), duals))
    return out


def relation_element(G: ModulatedGraph) -> Relation:
    comps: Dict[str, Dict[str, List[Fraction]]] = {p: {} for p in G.points}
    tensors, terms = {}, {}
    for a in _arrows(G):
        T = TensorProduct(a.pair.M, a.pair.Mdual)
        v = [Fraction(0)] * T.dim
        pairs = list(zip(a.free.basis, a.duals))
        for y, ys in pairs:
            for i, x in enumerate(T.pure(y, ys)):
                v[i] += x
        comps[a.s][a.t] = v
        tensors[(a.s, a.t)] = T
        terms[(a.s, a.t)] = pairs
    return Relation(comps, tensors, terms)


@dataclass
class GradedDims:
    dims: List[int]
    cap: int
    total: Optional[int]
    tensor_dims: List[int] = field(default_factory=list)
    vertex_dims: List[Dict[str, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"format": 1, "dims": self.dims, "cap": self.cap, "total": self.total,
                "tensor_dims": self.tensor_dims}

    @classmethod
    def from_json(cls, obj: dict) -> "GradedDims":
        return cls([int(d) for d in obj["dims"]], int(obj["cap"]),
                   None if obj.get("total") is None else int(obj["total"]),
                   [int(d) for d in obj.get("tensor_dims", [])])

    def table(self) -> str:
        rows = ["degree | dim T_m | dim Lambda_m"]
        for m, d in enumerate(self.dims):
            rows.append(f"{m} | {self.tensor_dims[m]} | {d}")
        rows.append(f"total: {self.total if self.total is not None else 'absent'}")
        return "\n".join(rows) + "\n"


def tensor_dims(G: ModulatedGraph, cap: int) -> List[int]:
    """``dim_Q T(G)_m`` for ``m <= cap`` from the path recursion."""
    v = {p: G.degree(p) for p in G.points}
    moves = []
    for i, j, P in G.edges:
        moves.append((i, j, P.M.dim // G.degree(i)))
        moves.append((j, i, P.Mdual.dim // G.degree(j)))
    out = [sum(v.values())]
    for _ in range(cap):
        nv = {p: 0 for p in G.points}
        for s, t, f in moves:
            nv[t] += v[s] * f
        v = nv
        out.append(sum(v.values()))
    return out


def graded_dims(G: ModulatedGraph, cap: int, max_coords: int = 10_000) -> GradedDims:
    """Graded rational dimensions of the preprojective algebra up to
    degree ``cap``; ``total`` is set when a zero layer is reached.

    ``max_coords`` bounds the number of ``k_t``-coordinates of any degree's
    ambient space at one vertex.  The elimination is dense, so work grows
    roughly with the cube of that number; exceeding it raises
    :class:`ResourceLimitError` rather than exhausting memory.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    arrows = _arrows(G)
    incoming: Dict[str, List[int]] = {p: [] for p in G.points}
    outgoing: Dict[str, List[int]] = {p: [] for p in G.points}
    index = {}
    for n, a in enumerate(arrows):
        incoming[a.t].append(n)
        outgoing[a.s].append(n)
        index[(a.s, a.t)] = n
    # coordinates of y*_tau (in B_ts) in the right k_s-basis of B_ts
    dual_coords = {n: [arrows[index[(a.t, a.s)]].free.coords(ys) for ys in a.duals] for n, a in enumerate(arrows)}
    zero = {p: _scalar(K, [Fraction(0)] * K.degree) for p, K in G.fields.items()}
    one = {p: _scalar(K, [Fraction(1)] + [Fraction(0)] * (K.degree - 1)) for p, K in G.fields.items()}

    r_prev2: Dict[str, int] = {}
    r_prev = {p: 1 for p in G.points}
    pi_prev: Dict[str, list] = {}  # projection W_{m-1}(t) -> L_{m-1}(t)
    offsets_prev: Dict[str, Dict[int, int]] = {}
    dims = [sum(G.degree(p) for p in G.points)]
    vertex_dims = [{p: G.degree(p) for p in G.points}]
    tdims = tensor_dims(G, cap + 1)
    zero_run = 1 if dims[0] == 0 else 0
    m = 0
    while m < cap + 1 and zero_run < 2:
        m += 1
        r_cur, pi_cur, offsets_cur = {}, {}, {}
        for t in G.points:
            offs, width = {}, 0
            for n in incoming[t]:
                offs[n] = width
                width += r_prev[arrows[n].s] * arrows[n].free.size
            if width > max_coords:
                raise ResourceLimitError(f"degree {m} space at {t} has {width} coordinates (limit {max_coords})")
            offsets_cur[t] = offs
            rels = []
            if m >= 2:
                for l in range(r_prev2[t]):
                    vec = [zero[t]] * width
                    for n in outgoing[t]:  # t -> u, then back u -> t
                        a = arrows[n]
                        u = a.t
                        back = index[(u, t)]
                        inner_off = offsets_prev[u][n]
                        pi_u = pi_prev[u]
                        sz_back = arrows[back].free.size
                        for tau in range(a.free.size):
                            col = inner_off + l * a.free.size + tau
                            w = dual_coords[n][tau]
                            for p in range(r_prev[u]):
                                vp = pi_u[p][col]
                                if vp == 0:
                                    continue
                                img = linalg.matvec(arrows[back].free.left_matrix(vp), w)
                                base = offs[back] + p * sz_back
                                for q, x in enumerate(img):
                                    if x != 0:
                                        vec[base + q] = vec[base + q] + x
                    rels.append(vec)
            pi, rk = linalg.quotient_map(rels, width, zero[t], one[t]) if rels else (
                [[one[t] if i == j else zero[t] for j in range(width)] for i in range(width)], 0)
            r_cur[t] = width - rk
            pi_cur[t] = pi
        r_prev2, r_prev, pi_prev, offsets_prev = r_prev, r_cur, pi_cur, offsets_cur
        d = sum(r_cur[p] * G.degree(p) for p in G.points)
        zero_run = zero_run + 1 if d == 0 else 0
        if m <= cap:
            dims.append(d)
            vertex_dims.append({p: r_cur[p] * G.degree(p) for p in G.points})
    if 0 in dims:
        first = dims.index(0)
        dims, vertex_dims = dims[: first + 1], vertex_dims[: first + 1]
        total = sum(dims)
    else:
        total = None
    return GradedDims(dims, cap, total, tdims[: len(dims)], vertex_dims)


def cartan_matrix(Q: ValuedQuiver) -> List[List[int]]:
    idx = {p: i for i, p in enumerate(Q.points)}
    n = len(idx)
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (s, t), (a, b) in Q.arrows.items():
        C[idx[s]][idx[t]] -= a
        C[idx[t]][idx[s]] -= b
    return C


def is_dynkin(Q) -> bool:
    """Positive definiteness of the symmetrized Cartan matrix, tested by
    the leading principal minors of ``C``."""
    if isinstance(Q, ModulatedGraph):
        Q = Q.valued_graph()
    if not Q.is_two_acyclic():
        raise ModulationError("valued graph has a 2-cycle")
    C = cartan_matrix(Q)
    return all(linalg.det([row[:k] for row in C[:k]]) > 0 for k in range(1, len(C) + 1))
