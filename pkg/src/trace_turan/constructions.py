"""Cone-type lower-bound constructions and the two conjectured extremal families.

Every builder places the base on vertices ``0..b-1`` and cone vertices after
it, so outputs are stable across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    complete_graph,
    complete_hypergraph,
    popcount,
    vset,
)
from .domination import phi
from .matching import min_edge_cover

KINDS = ("thm2", "thm3", "thm4", "thm5", "thm6", "conj1_a", "conj1_b", "conj2")


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    r: int | None = None
    s: int | None = None
    t: int | None = None
    n: int | None = None
    base: Hypergraph | None = None


@dataclass(frozen=True)
class PredictedCounts:
    edges: int
    cliques_t: int | None = None
    t: int | None = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        out: dict = {"edges": self.edges}
        if self.cliques_t is not None:
            out["cliques_t"] = self.cliques_t
            out["t"] = self.t
        out["flags"] = list(self.flags)
        return out


def _make(n: int, edges, r: int) -> Hypergraph:
    if r == 2:
        return Graph(n, tuple(edges))
    return Hypergraph(n, tuple(edges), r)


def _cone(base_edges, b: int, n: int) -> list[int]:
    return [e | (1 << v) for v in range(b, n) for e in base_edges]


def _check_base(base: Hypergraph, n: int) -> int:
    """Validate a cone base and return its vertex count."""
    if base.m == 0:
        if n < base.n:
            raise InvalidArgument("n is smaller than the base")
        return base.n
    r = base.uniformity
    if r is None or (base.r is not None and base.r != r):
        raise InvalidArgument("base must be uniform")
    if base.has_isolated:
        raise InvalidArgument("base must not have isolated vertices")
    if n < base.n:
        raise InvalidArgument(f"n = {n} is smaller than the base ({base.n} vertices)")
    return base.n


def _base_rank(base: Hypergraph) -> int:
    r = base.uniformity if base.m else base.r
    if r is None:
        raise InvalidArgument("empty base needs an explicit uniformity tag")
    return r


def thm2_construction(base: Hypergraph, n: int) -> Hypergraph:
    """Every vertex outside the base joined to every base edge."""
    b = _check_base(base, n)
    return _make(n, _cone(base.edges, b, n), _base_rank(base) + 1)


def thm6_construction(base: Hypergraph, n: int) -> Hypergraph:
    """Same cone as :func:`thm2_construction`; the base carries the F condition."""
    return thm2_construction(base, n)


def cover_removed_graph(m: int) -> Graph:
    """K_m minus its lexicographically least minimum edge cover."""
    K = complete_graph(m)
    cover = {vset(e) for e in min_edge_cover(K)}
    return Graph(m, tuple(e for e in K.edges if e not in cover))


def thm3_construction(s: int, n: int) -> Hypergraph:
    if s < 1:
        raise InvalidArgument("s must be at least 1")
    b = s + 2
    if n < b:
        raise InvalidArgument(f"n must be at least s + 2 = {b}")
    G = cover_removed_graph(b)
    interior = [vset(c) for c in itertools.combinations(range(b), 3)]
    return Hypergraph(n, tuple(_cone(G.edges, b, n) + interior), 3)


def thm4_construction(r: int, s: int, t: int, n: int) -> Hypergraph:
    if r < 3:
        raise InvalidArgument("r must be at least 3")
    if s < 1:
        raise InvalidArgument("s must be at least 1")
    if not r + 1 <= t <= s + r - 1:
        raise InvalidArgument(f"t must lie in [{r + 1}, {s + r - 1}]")
    b = s + r - 2
    if n < b:
        raise InvalidArgument(f"n must be at least s + r - 2 = {b}")
    base = [vset(c) for c in itertools.combinations(range(b), r - 1)]
    interior: set[int] = set()
    for host in itertools.combinations(range(b), t - 1):
        interior.update(vset(c) for c in itertools.combinations(host, r))
    return Hypergraph(n, tuple(_cone(base, b, n) + sorted(interior)), r)


def thm5_construction(s: int, n: int) -> Hypergraph:
    if s < 3:
        raise InvalidArgument("s must be at least 3")
    b = s + 1
    if n < b:
        raise InvalidArgument(f"n must be at least s + 1 = {b}")
    base = complete_graph(b).edges
    interior = [vset(c) for c in itertools.combinations(range(b), 3)]
    return Hypergraph(n, tuple(_cone(base, b, n) + interior), 3)


def min_covering_removal(m: int, r: int) -> list[int]:
    """Fewest r-subsets of ``range(m)`` covering every (r-1)-subset.

    Exact set cover by iterative deepening; within a size the search walks
    combinations in lexicographic order, so the first hit is the least one.
    """
    if r < 1 or m < r:
        raise InvalidArgument("need 1 <= r <= m")
    sets = [vset(c) for c in itertools.combinations(range(m), r)]
    targets = [vset(c) for c in itertools.combinations(range(m), r - 1)]
    tindex = {t: i for i, t in enumerate(targets)}
    cover_bits = []
    for e in sets:
        acc = 0
        for v in range(m):
            if e >> v & 1:
                acc |= 1 << tindex[e ^ (1 << v)]
        cover_bits.append(acc)
    # last set index able to cover each target
    last_for = [max(i for i, cb in enumerate(cover_bits) if cb >> j & 1) for j in range(len(targets))]
    everything = (1 << len(targets)) - 1
    chosen: list[int] = []

    def dfs(start: int, covered: int, slots: int) -> bool:
        if covered == everything:
            return True
        if slots == 0:
            return False
        missing = everything & ~covered
        if popcount(missing) > r * slots:
            return False
        low = (missing & -missing).bit_length() - 1
        if last_for[low] < start:
            return False
        for i in range(start, last_for[low] + 1):
            chosen.append(i)
            if dfs(i + 1, covered | cover_bits[i], slots - 1):
                return True
            chosen.pop()
        return False

    lower = -(-len(targets) // r)
    for k in range(lower, len(sets) + 1):
        chosen.clear()
        if dfs(0, 0, k):
            return [sets[i] for i in chosen]
    raise AssertionError("all r-sets always cover")  # pragma: no cover


def conjecture1_candidates(r: int, s: int) -> tuple[Hypergraph, Hypergraph]:
    """(K^r_{s+r-1}, K^r_{s+r} minus a minimum covering edge set)."""
    if r < 2 or s < 1:
        raise InvalidArgument("need r >= 2 and s >= 1")
    A = complete_hypergraph(s + r - 1, r)
    K = complete_hypergraph(s + r, r)
    removed = set(min_covering_removal(s + r, r))
    B = _make(s + r, [e for e in K.edges if e not in removed], r)
    return A, B


def conjecture2_candidate(r: int, s: int) -> Hypergraph:
    if r < 2 or s < 1:
        raise InvalidArgument("need r >= 2 and s >= 1")
    return complete_hypergraph(s + r - 1, r)


# -- kind-dispatched entry points ---------------------------------------------

def _small_n(r: int, s: int, n: int, b: int) -> tuple[str, ...]:
    return ("small-n",) if n - b < r * (s + 1) + 1 else ()


def build(spec: ConstructionSpec) -> Hypergraph:
    k = spec.kind
    if k in ("thm2", "thm6"):
        if spec.base is None or spec.n is None:
            raise InvalidArgument(f"{k} needs a base and n")
        return thm2_construction(spec.base, spec.n)
    if k == "thm3":
        return thm3_construction(_need(spec.s, "s"), _need(spec.n, "n"))
    if k == "thm4":
        return thm4_construction(_need(spec.r, "r"), _need(spec.s, "s"), _need(spec.t, "t"), _need(spec.n, "n"))
    if k == "thm5":
        return thm5_construction(_need(spec.s, "s"), _need(spec.n, "n"))
    if k == "conj1_a":
        return conjecture1_candidates(_need(spec.r, "r"), _need(spec.s, "s"))[0]
    if k == "conj1_b":
        return conjecture1_candidates(_need(spec.r, "r"), _need(spec.s, "s"))[1]
    if k == "conj2":
        return conjecture2_candidate(_need(spec.r, "r"), _need(spec.s, "s"))
    raise InvalidArgument(f"unknown construction kind {k!r}")


def _need(value: int | None, name: str) -> int:
    if value is None:
        raise InvalidArgument(f"parameter {name} is required")
    return value


def predicted_counts(spec: ConstructionSpec) -> PredictedCounts:
    """Closed-form edge (and clique) counts, evaluated in exact integers."""
    k = spec.kind
    if k in ("thm2", "thm6"):
        base, n = spec.base, _need(spec.n, "n")
        if base is None:
            raise InvalidArgument(f"{k} needs a base")
        b = _check_base(base, n)
        r = _base_rank(base) + 1
        s = spec.s if spec.s is not None else phi(base)
        return PredictedCounts(base.m * (n - b), flags=_small_n(r, s, n, b))
    if k == "thm3":
        s, n = _need(spec.s, "s"), _need(spec.n, "n")
        edges = (s * (s + 2) // 2) * (n - s - 2) + comb(s + 2, 3)
        return PredictedCounts(edges, flags=_small_n(3, s, n, s + 2))
    if k == "thm4":
        r, s, t, n = (_need(spec.r, "r"), _need(spec.s, "s"), _need(spec.t, "t"), _need(spec.n, "n"))
        b = s + r - 2
        edges = comb(b, r - 1) * (n - b) + comb(b, r)
        cliques = comb(b, t - 1) * (n - b) + comb(b, t)
        return PredictedCounts(edges, cliques, t, _small_n(r, s, n, b))
    if k == "thm5":
        s, n = _need(spec.s, "s"), _need(spec.n, "n")
        b = s + 1
        edges = comb(b, 2) * (n - b) + comb(b, 3)
        if spec.t is None:
            return PredictedCounts(edges, flags=_small_n(3, s, n, b))
        t = spec.t
        if not 4 <= t <= s:
            raise InvalidArgument("clique prediction needs 4 <= t <= s")
        cliques = comb(b, t - 1) * (n - b) + comb(b, t)
        return PredictedCounts(edges, cliques, t, _small_n(3, s, n, b))
    if k in ("conj1_a", "conj2"):
        r, s = _need(spec.r, "r"), _need(spec.s, "s")
        return PredictedCounts(comb(s + r - 1, r))
    if k == "conj1_b":
        r, s = _need(spec.r, "r"), _need(spec.s, "s")
        return PredictedCounts(comb(s + r, r) - len(min_covering_removal(s + r, r)))
    raise InvalidArgument(f"unknown construction kind {k!r}")
