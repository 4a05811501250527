"""Trace containment of matchings and graphs, and dominated copies of (F, W)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import kernels
from .hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    bits,
    exact_pair_graph,
    popcount,
    spanning_embeds,
    vset,
)

ENGINES = ("pruned", "reference")


@dataclass(frozen=True)
class MatchingCore:
    pairs: tuple[tuple[int, int], ...]
    witnesses: tuple[int, ...]  # indices into H.edges

    @property
    def vertex_set(self) -> int:
        return vset(v for p in self.pairs for v in p)

    def verify(self, H: Hypergraph) -> bool:
        S = self.vertex_set
        if popcount(S) != 2 * len(self.pairs):
            return False
        return all(H.edges[w] & S == vset(p) for p, w in zip(self.pairs, self.witnesses))

    def to_dict(self, H: Hypergraph) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "witnesses": [list(bits(H.edges[w])) for w in self.witnesses],
        }


@dataclass(frozen=True)
class DominatedCopy:
    mapping: tuple[int, ...]  # F vertex -> G vertex
    pair_witnesses: tuple[int, ...]  # per F edge, in F.edges order
    point_witnesses: tuple[int, ...]  # per W vertex, ascending

    @property
    def image(self) -> int:
        return vset(self.mapping)


def _first_witness(H: Hypergraph, S: int, target: int) -> int:
    for i, e in enumerate(H.edges):
        if e & S == target:
            return i
    raise AssertionError("no witness edge")  # pragma: no cover


def _core_on(H: Hypergraph, S: int) -> MatchingCore | None:
    """Lexicographically first perfect matching of the exact-pair graph on S."""
    adj = exact_pair_graph(H, S).adj

    def rec(rem: int) -> list[tuple[int, int]] | None:
        if not rem:
            return []
        v = (rem & -rem).bit_length() - 1
        for u in bits(adj[v] & rem):
            tail = rec(rem & ~(1 << v) & ~(1 << u))
            if tail is not None:
                return [(v, u)] + tail
        return None

    pairs = rec(S)
    if pairs is None:
        return None
    wit = tuple(_first_witness(H, S, vset(p)) for p in pairs)
    return MatchingCore(tuple(pairs), wit)


def _reference_core(H: Hypergraph, k: int) -> MatchingCore | None:
    S = kernels.first_matching_trace_set(H, k)
    if S < 0:
        return None
    return _core_on(H, S)


def _pruned_core(H: Hypergraph, k: int) -> MatchingCore | None:
    """Grow disjoint pairs in index order; a chosen pair dies once every edge
    through it meets the growing core outside the pair (monotone in the core)."""
    through: dict[int, list[int]] = {}
    for e in H.edges:
        for u, v in itertools.combinations(bits(e), 2):
            through.setdefault((1 << u) | (1 << v), []).append(e)
    pairs = sorted(through, key=bits)
    if len(pairs) < k:
        return None
    chosen: list[int] = []

    def alive(core: int) -> bool:
        for q in chosen:
            if not any(e & core == q for e in through[q]):
                return False
        return True

    def extend(start: int, core: int) -> bool:
        if len(chosen) == k:
            return True
        need = k - len(chosen)
        for idx in range(start, len(pairs) - need + 1):
            p = pairs[idx]
            if p & core:
                continue
            nxt = core | p
            chosen.append(p)
            if alive(nxt) and extend(idx + 1, nxt):
                return True
            chosen.pop()
        return False

    if not extend(0, 0):
        return None
    S = vset(v for q in chosen for v in bits(q))
    ordered = tuple(sorted(bits(q) for q in chosen))
    return MatchingCore(
        tuple((a, b) for a, b in ordered),
        tuple(_first_witness(H, S, vset(p)) for p in ordered),
    )


def contains_matching_trace(H: Hypergraph, k: int, engine: str = "pruned") -> MatchingCore | None:
    """A core of an M_k trace in ``H``, or None."""
    if k < 1:
        raise InvalidArgument("matching size must be at least 1")
    if engine == "pruned":
        return _pruned_core(H, k)
    if engine == "reference":
        return _reference_core(H, k)
    raise InvalidArgument(f"unknown engine {engine!r}; pick one of {ENGINES}")


def contains_graph_trace(H: Hypergraph, F: Graph) -> tuple[int, tuple[int, ...]] | None:
    """(S, lam) with every F-edge realized by an exact-pair trace member on S."""
    f = F.n
    if f > H.n:
        return None
    for combo in itertools.combinations(range(H.n), f):
        S = vset(combo)
        local = exact_pair_graph(H, S).induced(S)
        if local.m < F.m:
            continue
        lam = spanning_embeds(F, local)
        if lam is not None:
            return S, tuple(combo[i] for i in lam)
    return None


def dominated_copy_exists(G: Hypergraph, F: Graph, W) -> DominatedCopy | None:
    """Injective tau: V(F) -> V(G) with exact-pair witnesses on F-edges and
    singleton witnesses on W, relative to the image set S."""
    Wmask = vset(W)
    if Wmask >> F.n:
        raise InvalidArgument("W must be a subset of V(F)")
    f = F.n
    if f > G.n:
        return None
    fedges = [bits(e) for e in F.edges]
    order = sorted(range(f), key=lambda u: (-F.deg(u) - (Wmask >> u & 1), u))
    pos = {u: i for i, u in enumerate(order)}
    # requirement becomes checkable once its last vertex is placed
    due: list[list[tuple[int, ...]]] = [[] for _ in range(f)]
    for a, b in fedges:
        due[max(pos[a], pos[b])].append((a, b))
    for w in bits(Wmask):
        due[pos[w]].append((w,))
    co_edge = [0] * G.n
    for e in G.edges:
        for v in bits(e):
            co_edge[v] |= e
    tau = [-1] * f

    def satisfied(req: tuple[int, ...], S: int) -> bool:
        target = vset(tau[u] for u in req)
        return any(e & S == target for e in G.edges)

    def place(i: int, S: int) -> bool:
        if i == f:
            return all(satisfied(req, S) for reqs in due for req in reqs)
        u = order[i]
        for x in range(G.n):
            if S >> x & 1:
                continue
            if (F.adj[u] or Wmask >> u & 1) and not co_edge[x]:
                continue
            tau[u] = x
            nxt = S | (1 << x)
            ok = True
            for j in range(i + 1):
                for req in due[j]:
                    if not satisfied(req, nxt):
                        ok = False
                        break
                if not ok:
                    break
            if ok and place(i + 1, nxt):
                return True
        tau[u] = -1
        return False

    if not place(0, 0):
        return None
    S = vset(tau)
    pw = tuple(_first_witness(G, S, vset((tau[a], tau[b]))) for a, b in fedges)
    qw = tuple(_first_witness(G, S, 1 << tau[w]) for w in bits(Wmask))
    return DominatedCopy(tuple(tau), pw, qw)


def independent_sets(F: Graph):
    """Independent vertex sets of F by size, then lexicographically."""
    for size in range(F.n + 1):
        for combo in itertools.combinations(range(F.n), size):
            mask = vset(combo)
            if all(not (F.adj[v] & mask) for v in combo):
                yield mask


def delete_vertices(F: Graph, I: int) -> tuple[Graph, list[int]]:
    """F - I relabeled onto ``0..``; returns the graph and old ids in order."""
    keep = [v for v in range(F.n) if not I >> v & 1]
    return F.induced(vset(keep)), keep


def forbidden_pattern(G: Hypergraph, F: Graph) -> tuple[int, DominatedCopy] | None:
    """First independent set I with a dominated copy of (F - I, N(I)) in G."""
    for I in independent_sets(F):
        nbhd = 0
        for v in bits(I):
            nbhd |= F.adj[v]
        rest, keep = delete_vertices(F, I)
        W = vset(i for i, v in enumerate(keep) if nbhd >> v & 1)
        copy = dominated_copy_exists(G, rest, W)
        if copy is not None:
            return I, copy
    return None


def forbidden_pattern_free(G: Hypergraph, F: Graph) -> bool:
    return forbidden_pattern(G, F) is None
