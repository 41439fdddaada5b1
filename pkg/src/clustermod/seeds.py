"""Seeds of geometric-type cluster algebras, seed mutation, canonical
forms, exchange-graph exploration and subcluster checks.

Cluster variables are Laurent polynomials in the initial variables
``x1..xm`` (the initial extended cluster); coefficients stay the monomials
``x_{n+1}..x_m``.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exchange_matrix import ExchangeMatrix, mutate_matrix
from .laurent import LaurentPoly, div_exact, to_text


class LaurentViolation(RuntimeError):
    """An exchange relation produced a non-Laurent variable.  This can only
    happen through a bug."""


@dataclass(frozen=True)
class Seed:
    cluster: Tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix
    inverted: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "cluster", tuple(self.cluster))
        object.__setattr__(self, "inverted", frozenset(int(i) for i in self.inverted))
        B = self.matrix
        if len(self.cluster) != B.n:
            raise ValueError(f"cluster has {len(self.cluster)} variables, matrix has {B.n} columns")
        if any(x.nvars != B.m or not x for x in self.cluster):
            raise ValueError("cluster variables must be nonzero Laurent polynomials in m variables")
        if not self.inverted <= set(range(B.n + 1, B.m + 1)):
            raise ValueError(f"inverted set {sorted(self.inverted)} not within coefficients {B.n + 1}..{B.m}")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def m(self) -> int:
        return self.matrix.m

    @property
    def coefficients(self) -> Tuple[LaurentPoly, ...]:
        return tuple(LaurentPoly.var(self.m, i) for i in range(self.n + 1, self.m + 1))

    def extended_cluster(self) -> Tuple[LaurentPoly, ...]:
        return self.cluster + self.coefficients

    def to_json(self) -> dict:
        return {
            "format": 1,
            "cluster": [to_text(x) for x in self.cluster],
            "matrix": self.matrix.to_json(),
            "inverted": sorted(self.inverted),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Seed":
        from .laurent import parse

        B = ExchangeMatrix.from_json(obj["matrix"])
        cluster = obj.get("cluster")
        if cluster is None:
            return initial_seed(B, obj.get("inverted", ()))
        return cls(tuple(parse(t, B.m) for t in cluster), B, frozenset(obj.get("inverted", ())))


def initial_seed(B: ExchangeMatrix, inverted: Iterable[int] = ()) -> Seed:
    return Seed(tuple(LaurentPoly.var(B.m, i) for i in range(1, B.n + 1)), B, frozenset(inverted))


def exchange_binomial(S: Seed, k: int) -> LaurentPoly:
    """Right-hand side of the exchange relation at ``k`` (1-based)."""
    xs = S.extended_cluster()
    one = LaurentPoly.const(S.m, 1)
    plus, minus = one, one
    for i in range(S.m):
        b = S.matrix.entries[i][k - 1]
        if b > 0:
            plus = plus * xs[i] ** b
        elif b < 0:
            minus = minus * xs[i] ** (-b)
    return plus + minus


def mutate_seed(S: Seed, k: int) -> Seed:
    if not 1 <= k <= S.n:
        raise IndexError(f"mutation index {k} outside 1..{S.n}")
    rhs = exchange_binomial(S, k)
    try:
        new = div_exact(rhs, S.cluster[k - 1])
    except ArithmeticError as exc:
        raise LaurentViolation(f"exchange at {k} left the Laurent ring: {exc}") from exc
    cluster = list(S.cluster)
    cluster[k - 1] = new
    return Seed(tuple(cluster), mutate_matrix(S.matrix, k), S.inverted)


def canonical_form(S: Seed) -> Tuple[Seed, str]:
    """Sort mutable variables by the canonical Laurent order, permuting the
    matrix simultaneously.  Returns the canonical seed and a stable hash."""
    perm = sorted(range(S.n), key=lambda i: S.cluster[i].key())
    C = Seed(tuple(S.cluster[i] for i in perm), S.matrix.permuted(perm), S.inverted)
    return C, seed_hash(C)


def seed_hash(S: Seed) -> str:
    text = "|".join(to_text(x) for x in S.cluster) + "#" + repr(S.matrix.entries) + "#" + repr(sorted(S.inverted))
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class ExchangeGraph:
    """Seeds (canonical forms) keyed by hash, undirected labelled edges and
    the set of distinct cluster variables encountered."""

    nodes: Dict[str, Seed] = field(default_factory=dict)
    depth: Dict[str, int] = field(default_factory=dict)
    # (hash_a, k_a, hash_b, k_b) with (hash_a, k_a) <= (hash_b, k_b); k is the
    # 1-based position in the canonical form of each endpoint
    edges: List[Tuple[str, int, str, int]] = field(default_factory=list)
    variables: List[LaurentPoly] = field(default_factory=list)
    complete: bool = False
    root: str = ""

    @property
    def n_seeds(self) -> int:
        return len(self.nodes)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def degree_labels(self) -> Dict[str, set]:
        labels: Dict[str, set] = {h: set() for h in self.nodes}
        for a, ka, b, kb in self.edges:
            labels[a].add(ka)
            labels[b].add(kb)
        return labels

    def summary(self) -> str:
        state = "complete" if self.complete else "truncated"
        return f"{state}: {self.n_seeds} seeds, {self.n_variables} variables"

    def to_json(self) -> dict:
        return {
            "format": 1,
            "complete": self.complete,
            "root": self.root,
            "seeds": [{"hash": h, "depth": self.depth[h], **self.nodes[h].to_json()} for h in sorted(self.nodes)],
            "edges": [list(e) for e in self.edges],
            "variables": [to_text(x) for x in self.variables],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExchangeGraph":
        from .laurent import parse

        g = cls(complete=bool(obj["complete"]), root=obj["root"])
        for entry in obj["seeds"]:
            g.nodes[entry["hash"]] = Seed.from_json(entry)
            g.depth[entry["hash"]] = int(entry["depth"])
        m = g.nodes[g.root].m if g.root in g.nodes else 0
        g.edges = [(a, int(ka), b, int(kb)) for a, ka, b, kb in obj["edges"]]
        g.variables = [parse(t, m) for t in obj["variables"]]
        return g

    def to_dot(self, prefix: int = 8) -> str:
        lines = ["graph exchange {"]
        for h in sorted(self.nodes):
            lines.append(f'  "{h[:prefix]}";')
        for a, ka, b, kb in self.edges:
            lines.append(f'  "{a[:prefix]}" -- "{b[:prefix]}" [label="{ka},{kb}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _threads(workers: Optional[int]) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get("CLUSTER_THREADS", "1")))
    except ValueError:
        return 1


def explore(S0: Seed, max_depth: int, max_seeds: int, workers: Optional[int] = None) -> ExchangeGraph:
    """Breadth-first closure of ``S0`` under mutation, deduplicated by
    canonical form.

    Layers are expanded in full (optionally in a thread pool of size
    ``workers``, default ``$CLUSTER_THREADS``) and merged in sorted order, so
    the result does not depend on scheduling.  The graph is complete when
    every mutation of every node lands on a known node.
    """
    if max_depth < 0 or max_seeds < 1:
        raise ValueError("limits must be positive")
    root, h0 = canonical_form(S0)
    g = ExchangeGraph(root=h0)
    g.nodes[h0] = root
    g.depth[h0] = 0
    edge_set = set()
    complete = True
    layer = [h0]
    depth = 0
    n = S0.n

    def expand(h: str):
        S = g.nodes[h]
        out = []
        for k in range(1, n + 1):
            M = mutate_seed(S, k)
            C, hc = canonical_form(M)
            kc = C.cluster.index(M.cluster[k - 1]) + 1
            out.append((k, C, hc, kc))
        return out

    nthreads = _threads(workers)
    pool = ThreadPoolExecutor(nthreads) if nthreads > 1 else None
    try:
        while layer:
            results = list(pool.map(expand, layer)) if pool else [expand(h) for h in layer]
            nxt = []
            for h, res in sorted(zip(layer, results), key=lambda t: t[0]):
                for k, C, hc, kc in res:
                    if hc not in g.nodes:
                        if depth + 1 > max_depth or len(g.nodes) >= max_seeds:
                            complete = False
                            continue
                        g.nodes[hc] = C
                        g.depth[hc] = depth + 1
                        nxt.append(hc)
                    e = min((h, k, hc, kc), (hc, kc, h, k))
                    edge_set.add(e)
            layer = sorted(nxt)
            depth += 1
    finally:
        if pool:
            pool.shutdown()
    g.edges = sorted(edge_set)
    g.complete = complete
    g.variables = sorted({x for S in g.nodes.values() for x in S.cluster}, key=LaurentPoly.key)
    return g


@dataclass(frozen=True)
class FiniteType:
    finite: bool
    count: Optional[int] = None
    seeds: Optional[int] = None

    def __str__(self):
        return f"finite({self.count})" if self.finite else "unknown_at_cap"


def is_finite_type(B: ExchangeMatrix, cap: int) -> FiniteType:
    """``finite(#cluster variables)`` if the exchange graph closes within
    ``cap`` seeds; otherwise unknown.  Never claims infinitude."""
    if cap < 1:
        raise ValueError("cap must be positive")
    g = explore(initial_seed(B), max_depth=cap, max_seeds=cap)
    if g.complete:
        return FiniteType(True, g.n_variables, g.n_seeds)
    return FiniteType(False)


def _link(B: ExchangeMatrix, r: int, s: int) -> int:
    """Entry ``b_rs`` for mutable ``r`` and any ``s`` (0-based); for frozen
    ``s`` the row entry ``b_sr`` stands in (same support)."""
    return B.entries[r][s] if s < B.n else B.entries[s][r]


def verify_subcluster(parent: Seed, sigma: Mapping[int, int] | Sequence[int], p: int,
                      inverted_sub: Iterable[int] = ()) -> bool:
    """Check that ``sigma`` (sub index -> parent index, 1-based) with the
    first ``p`` sub indices mutable defines a subcluster seed.

    The sub-seed matrix is ``b'_ij = b_{sigma_i sigma_j}``; sub indices
    ``p+1..q`` act as coefficients and may map to any parent variable.
    """
    if isinstance(sigma, Mapping):
        q = len(sigma)
        if set(sigma) != set(range(1, q + 1)):
            raise ValueError("sigma must be defined on 1..q")
        images = [int(sigma[i]) for i in range(1, q + 1)]
    else:
        images = [int(x) for x in sigma]
        q = len(images)
    B = parent.matrix
    if len(set(images)) != q:
        raise ValueError("sigma is not injective")
    if any(not 1 <= x <= B.m for x in images):
        raise ValueError("sigma image outside parent indices")
    if not 1 <= p <= min(q, B.n):
        raise ValueError(f"p={p} outside 1..{min(q, B.n)}")
    if any(x > B.n for x in images[:p]):
        raise ValueError("first p images must be mutable in the parent")
    inv_sub = frozenset(int(i) for i in inverted_sub)
    if not inv_sub <= set(range(p + 1, q + 1)):
        raise ValueError("inverted_sub must lie within p+1..q")
    # the sub cluster and coefficients are disjoint pieces of the parent
    # extended cluster (injectivity of sigma already checked)
    image_set = {x - 1 for x in images}
    # every neighbour of a sub-mutable index lies in the image
    for i in range(p):
        r = images[i] - 1
        for s in range(B.m):
            if s != r and _link(B, r, s) != 0 and s not in image_set:
                return False
    # parent-inverted coefficients kept in the sub-seed stay inverted
    for j in range(p + 1, q + 1):
        if images[j - 1] in parent.inverted and j not in inv_sub:
            return False
    return True


def subcluster_matrix(parent: Seed, sigma: Sequence[int], p: int) -> ExchangeMatrix:
    """The ``q x p`` matrix ``b'_ij = b_{sigma_i sigma_j}``."""
    B = parent.matrix
    q = len(sigma)
    return ExchangeMatrix(tuple(
        tuple(B.entries[sigma[i] - 1][sigma[j] - 1] for j in range(p)) for i in range(q)))

