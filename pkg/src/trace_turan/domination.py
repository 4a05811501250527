"""Dominating and dominated sets, plus the heavy/light edge decomposition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import kernels
from .hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    bits,
    full_mask,
    popcount,
    vset,
)


@dataclass(frozen=True)
class DominationResult:
    gamma: int
    phi: int
    witness_dominating: int
    witness_dominated: int


@dataclass(frozen=True)
class Decomposition:
    threshold: int
    G2: Hypergraph
    H1: tuple[int, ...]
    H2: tuple[int, ...]


def _dominated_by(H: Hypergraph, D: int) -> int:
    """Vertices in D or having an edge whose other vertices all lie in D."""
    acc = D
    for e in H.edges:
        outside = e & ~D
        if outside and outside & (outside - 1) == 0:
            acc |= outside
    return acc


def is_dominating(H: Hypergraph, D) -> bool:
    mask = vset(D)
    return _dominated_by(H, mask) & full_mask(H.n) == full_mask(H.n)


def is_dominated(H: Hypergraph, S) -> bool:
    """Every v in S has an edge meeting S in exactly {v}."""
    mask = vset(S)
    wit = 0
    for e in H.edges:
        inter = e & mask
        if inter and inter & (inter - 1) == 0:
            wit |= inter
    return wit == mask


def gamma(H: Hypergraph) -> DominationResult:
    """Exact domination number by iterative-deepening branch and bound.

    Branches on the lowest undominated vertex v: either v joins D or, for
    some edge e through v, all of e - {v} does.
    """
    n = H.n
    everything = full_mask(n)
    inc = [[e for e in H.edges if e >> v & 1] for v in range(n)]

    def search(D: int, budget: int) -> int | None:
        dom = _dominated_by(H, D)
        if dom == everything:
            return D
        free = everything & ~dom
        v = (free & -free).bit_length() - 1
        options = {1 << v}
        for e in inc[v]:
            add = (e ^ (1 << v)) & ~D
            if add:
                options.add(add)
        ranked = []
        for add in options:
            size = popcount(add)
            if size > budget:
                continue
            gain = popcount(_dominated_by(H, D | add) & ~dom)
            ranked.append((-gain, bits(add), add))
        ranked.sort()
        for _, _, add in ranked:
            found = search(D | add, budget - popcount(add))
            if found is not None:
                return found
        return None

    for k in range(n + 1):
        D = search(0, k)
        if D is not None:
            return DominationResult(k, n - k, D, everything & ~D)
    raise AssertionError("the full vertex set always dominates")  # pragma: no cover


def max_dominated_set(H: Hypergraph) -> tuple[int, int]:
    """(phi, witness) by decreasing-size search over candidate dominated sets.

    Isolated vertices are skipped: they never have a singleton witness.
    """
    if not H.edges:
        return 0, 0
    core = H.drop_isolated()
    keep = bits(H.support)
    for k in range(core.n, 0, -1):
        found = kernels.first_dominated_subset(core, k)
        if found >= 0:
            return k, vset(keep[i] for i in bits(found))
    return 0, 0  # pragma: no cover - any single vertex of an edge is dominated


def phi(H: Hypergraph, cross_check: bool = False) -> int:
    value = max_dominated_set(H)[0]
    if cross_check:
        via_gamma = H.n - gamma(H).gamma
        if via_gamma != value:
            raise AssertionError(f"direct phi {value} disagrees with n - gamma = {via_gamma}")
    return value


def has_dominated_set(H: Hypergraph, k: int) -> bool:
    """True iff some k-set is dominated (dominated sets are closed under subsets)."""
    if k <= 0:
        return True
    if popcount(H.support) < k:
        return False
    return kernels.first_dominated_subset(H.drop_isolated(), k) >= 0


def heavy_threshold(r: int, s: int, v_f: int | None = None) -> int:
    """Codegree cut for heavy (r-1)-sets; the graph-pair variant adds v(F)."""
    if v_f is None:
        return r * (s + 1) + 1
    return 3 * r * (s + 1) + v_f


def decompose(H: Hypergraph, threshold: int) -> Decomposition:
    r = H.uniformity
    if H.m and r is None:
        raise InvalidArgument("decompose needs a uniform hypergraph")
    if threshold < 1:
        raise InvalidArgument("threshold must be positive")
    if r is None:
        r = H.r or 2
    if r < 2:
        raise InvalidArgument("decompose needs uniformity at least 2")
    counts: Counter[int] = Counter()
    for e in H.edges:
        for v in bits(e):
            counts[e ^ (1 << v)] += 1
    heavy = {T for T, c in counts.items() if c >= threshold}
    H1, H2 = [], []
    for e in H.edges:
        if any((e ^ (1 << v)) in heavy for v in bits(e)):
            H2.append(e)
        else:
            H1.append(e)
    if r == 3:
        G2: Hypergraph = Graph(H.n, tuple(heavy))
    else:
        G2 = Hypergraph(H.n, tuple(heavy), r - 1)
    return Decomposition(threshold, G2, tuple(H1), tuple(H2))
