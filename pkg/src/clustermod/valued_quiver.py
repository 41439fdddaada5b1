"""Valued quivers, their correspondence with exchange matrices, and
mutation at a point.

An arrow ``s -> t`` is stored once per ordered pair with valuation
``(d_st, d_ts)``; parallel arrows are merged into the fully valued arrow by
summing valuations.  Points are strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from .exchange_matrix import ExchangeMatrix, Symmetrizer, sign, solve_symmetrizer

Arrow = Tuple[str, str]
Valuation = Tuple[int, int]


class QuiverError(ValueError):
    pass


def _merge(arrows: Iterable[Tuple[str, str, Valuation]]) -> Dict[Arrow, Valuation]:
    out: Dict[Arrow, Valuation] = {}
    for s, t, (a, b) in arrows:
        s, t, a, b = str(s), str(t), int(a), int(b)
        if a == 0 and b == 0:
            continue
        if a <= 0 or b <= 0:
            raise QuiverError(f"arrow {s}->{t} has non-positive valuation ({a},{b})")
        if s == t:
            raise QuiverError(f"loop at {s}")
        pa, pb = out.get((s, t), (0, 0))
        out[(s, t)] = (pa + a, pb + b)
    return out


@dataclass(frozen=True, eq=False)
class ValuedQuiver:
    points: Tuple[str, ...]
    arrows: Mapping[Arrow, Valuation]
    frozen: FrozenSet[str] = frozenset()
    symmetrizer: Mapping[str, int] = field(default_factory=dict)
    extended: bool = False

    def __post_init__(self):
        pts = tuple(str(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise QuiverError("duplicate points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "frozen", frozenset(str(p) for p in self.frozen))
        arrows = _merge((s, t, v) for (s, t), v in dict(self.arrows).items())
        object.__setattr__(self, "arrows", arrows)
        known = set(pts)
        if not self.frozen <= known:
            raise QuiverError("frozen points must be points")
        for s, t in arrows:
            if s not in known or t not in known:
                raise QuiverError(f"arrow {s}->{t} touches unknown point")
            if self.extended and s in self.frozen and t in self.frozen:
                raise QuiverError(f"extended quiver has frozen-frozen arrow {s}->{t}")
        sym = {str(p): int(v) for p, v in dict(self.symmetrizer).items()}
        if not sym:
            sym = _minimal_symmetrizer(pts, arrows)
        if set(sym) != known:
            raise QuiverError("symmetrizer must cover every point")
        for (s, t), (a, b) in arrows.items():
            if sym[s] <= 0 or a * sym[t] != b * sym[s]:
                raise QuiverError(f"valuation ({a},{b}) on {s}->{t} not symmetrized by {sym}")
        object.__setattr__(self, "symmetrizer", sym)

    @classmethod
    def build(cls, points, arrows: Iterable[Tuple], frozen=(), symmetrizer=None, extended=False) -> "ValuedQuiver":
        """Construct from ``(source, target, (d_st, d_ts))`` triples; parallel
        arrows are summed."""
        return cls(tuple(points), _merge(arrows), frozenset(frozen), symmetrizer or {}, extended)

    @property
    def mutable(self) -> Tuple[str, ...]:
        return tuple(p for p in self.points if p not in self.frozen)

    def valuation(self, s, t) -> Valuation:
        return self.arrows.get((str(s), str(t)), (0, 0))

    def two_cycles(self) -> list:
        return sorted({tuple(sorted(a)) for a in self.arrows if (a[1], a[0]) in self.arrows})

    def is_two_acyclic(self) -> bool:
        return not self.two_cycles()

    def _key(self):
        return (self.points, tuple(sorted(self.arrows.items())), tuple(sorted(self.frozen)),
                tuple(sorted(self.symmetrizer.items())), self.extended)

    def __eq__(self, other):
        return isinstance(other, ValuedQuiver) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        arr = ", ".join(f"{s}->{t} {v}" for (s, t), v in sorted(self.arrows.items()))
        return f"ValuedQuiver(points={list(self.points)}, frozen={sorted(self.frozen)}, arrows=[{arr}])"

    def to_json(self) -> dict:
        return {
            "format": 1,
            "points": list(self.points),
            "frozen": [p for p in self.points if p in self.frozen],
            "arrows": [{"from": s, "to": t, "d": [a, b]} for (s, t), (a, b) in sorted(self.arrows.items())],
            "symmetrizer": {p: self.symmetrizer[p] for p in self.points},
            "extended": self.extended,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ValuedQuiver":
        arrows = [(a["from"], a["to"], tuple(a["d"])) for a in obj.get("arrows", [])]
        return cls.build(obj["points"], arrows, obj.get("frozen", ()), obj.get("symmetrizer"),
                         bool(obj.get("extended", False)))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for p in self.points:
            shape = "box" if p in self.frozen else "ellipse"
            lines.append(f'  "{p}" [shape={shape}];')
        for (s, t), (a, b) in sorted(self.arrows.items()):
            lines.append(f'  "{s}" -> "{t}" [label="{a},{b}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _minimal_symmetrizer(points, arrows) -> Dict[str, int]:
    idx = {p: i for i, p in enumerate(points)}
    # d_st * n_t == d_ts * n_s
    cons = [(idx[s], idx[t], a, b) for (s, t), (a, b) in arrows.items()]
    w = solve_symmetrizer(len(points), cons)
    if w is None:
        raise QuiverError("valuation is not symmetrizable")
    return {p: w[i] for p, i in idx.items()}


def from_matrix(B: ExchangeMatrix, S: Optional[Symmetrizer] = None) -> ValuedQuiver:
    """Extended valued quiver on points ``"1".."m"``; ``n+1..m`` frozen.

    For a frozen row ``i`` only ``b_ij`` is known; its second valuation entry
    is fixed by giving frozen points symmetrizer weight 1.
    """
    S = S or B.symmetrizer
    if not S.symmetrizes(B):
        raise QuiverError("symmetrizer does not symmetrize the matrix")
    n, m = B.n, B.m
    weight = {str(i + 1): (S.diag[i] if i < n else 1) for i in range(m)}
    arrows = {}
    e = B.entries
    for i in range(m):
        for j in range(n):
            bij = e[i][j]
            if bij == 0 or (i < n and j < i):
                continue
            si, sj = str(i + 1), str(j + 1)
            # |b_ji| from the row when available, else from the weights
            dji = abs(e[j][i]) if i < n else abs(bij) * weight[sj] // weight[si]
            if bij > 0:
                arrows[(si, sj)] = (bij, dji)
            else:
                arrows[(sj, si)] = (dji, -bij)
    return ValuedQuiver(tuple(str(i + 1) for i in range(m)), arrows,
                        frozenset(str(i + 1) for i in range(n, m)), weight, extended=True)


def to_matrix(Q: ValuedQuiver) -> ExchangeMatrix:
    """Matrix with rows ordered mutable points first, then frozen points."""
    cyc = Q.two_cycles()
    if cyc:
        raise QuiverError(f"two-cycle between {cyc[0][0]} and {cyc[0][1]}: no matrix corresponds")
    mut = Q.mutable
    if not mut:
        raise QuiverError("quiver has no mutable points")
    rows = list(mut) + [p for p in Q.points if p in Q.frozen]
    for s, t in Q.arrows:
        if s in Q.frozen and t in Q.frozen:
            raise QuiverError(f"frozen-frozen arrow {s}->{t} has no matrix entry")
    entries = []
    for i in rows:
        row = []
        for j in mut:
            if (i, j) in Q.arrows:
                row.append(Q.arrows[(i, j)][0])
            elif (j, i) in Q.arrows:
                row.append(-Q.arrows[(j, i)][1])
            else:
                row.append(0)
        entries.append(tuple(row))
    return ExchangeMatrix(tuple(entries))


def _check_point(Q: ValuedQuiver, k) -> str:
    k = str(k)
    if k not in Q.points:
        raise QuiverError(f"unknown point {k}")
    if k in Q.frozen:
        raise QuiverError(f"point {k} is frozen")
    return k


def check_mutable_at(Q: ValuedQuiver, k) -> bool:
    """True iff ``k`` lies on no loop and no 2-cycle."""
    k = _check_point(Q, k)
    return not any((k, i) in Q.arrows for (i, t) in Q.arrows if t == k)


def mutate_quiver(Q: ValuedQuiver, k) -> ValuedQuiver:
    k = _check_point(Q, k)
    if not check_mutable_at(Q, k):
        raise QuiverError(f"point {k} lies on a 2-cycle")
    new: Dict[Arrow, Valuation] = {}
    ins, outs = {}, {}
    for (s, t), (a, b) in Q.arrows.items():
        if t == k:
            ins[s] = (a, b)
            new[(t, s)] = (b, a)
        elif s == k:
            outs[t] = (a, b)
            new[(t, s)] = (b, a)
        else:
            new[(s, t)] = (a, b)
    for i, (d_ik, d_ki) in ins.items():
        for j, (d_kj, d_jk) in outs.items():
            p_ij, p_ji = d_ik * d_kj, d_ki * d_jk
            g = new.pop((j, i), (0, 0))  # stored as (d_ji, d_ij)
            diff_ij, diff_ji = p_ij - g[1], p_ji - g[0]
            s = sign(diff_ij)
            if s != sign(diff_ji):
                raise QuiverError(f"inconsistent signs on {i},{j}: valuation not symmetrizable")
            if s > 0:
                a, b = new.get((i, j), (0, 0))
                new[(i, j)] = (a + diff_ij, b + diff_ji)
            elif s < 0:
                new[(j, i)] = (-diff_ji, -diff_ij)
    if Q.extended:
        new = {a: v for a, v in new.items() if not (a[0] in Q.frozen and a[1] in Q.frozen)}
    return ValuedQuiver(Q.points, new, Q.frozen, Q.symmetrizer, Q.extended)


def mutate_quiver_sequence(Q: ValuedQuiver, seq: Iterable) -> ValuedQuiver:
    for k in seq:
        Q = mutate_quiver(Q, k)
    return Q
