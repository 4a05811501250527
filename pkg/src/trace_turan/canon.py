"""Canonical forms for small hypergraphs.

The key is the lexicographically least sorted edge-mask list over the
labelings reached by colour refinement plus individualization.  Every leaf
set is permutation-equivariant, so the minimum is an isomorphism invariant.
Swapping two twin vertices is an automorphism, so only one vertex per twin
class is individualized at each node.
"""

from __future__ import annotations

from .hypergraph import BudgetExceeded, Hypergraph, bits

CANONICAL_LIMIT = 12

CanonicalKey = tuple[int, tuple[int, ...]]


def _twin_classes(n: int, edges: tuple[int, ...], edge_set: frozenset[int]) -> list[int]:
    """Representative of each vertex under 'transposition is an automorphism'."""
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        bu = 1 << u
        for v in range(u + 1, n):
            if rep[v] != v:
                continue
            bv = 1 << v
            both = bu | bv
            ok = True
            for e in edges:
                hit = e & both
                if hit and hit != both and (e ^ both) not in edge_set:
                    ok = False
                    break
            if ok:
                rep[v] = u
    return rep


def _refine(n: int, members: list[tuple[int, ...]], inc: list[list[int]], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            around = sorted(
                tuple(sorted(colors[u] for u in members[ei] if u != v)) for ei in inc[v]
            )
            sigs.append((colors[v], tuple(around)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [order[s] for s in sigs]
        if len(order) == ncolors:
            return colors
        ncolors = len(order)


def canonical_labeling(H: Hypergraph, limit: int = CANONICAL_LIMIT) -> tuple[CanonicalKey, list[int]]:
    """Canonical key plus one permutation mapping ``H`` onto it."""
    n = H.n
    if n > limit:
        raise BudgetExceeded(f"canonical form limited to {limit} vertices, got {n}")
    edges = H.edges
    if n == 0 or not edges:
        return (n, ()), list(range(n))
    members = [bits(e) for e in edges]
    inc: list[list[int]] = [[] for _ in range(n)]
    for i, mem in enumerate(members):
        for v in mem:
            inc[v].append(i)
    twin = _twin_classes(n, edges, H.edge_set)

    best: list = [None, None]

    def leaf(colors: list[int]) -> None:
        new = []
        for mem in members:
            acc = 0
            for v in mem:
                acc |= 1 << colors[v]
            new.append(acc)
        new.sort()
        key = tuple(new)
        if best[0] is None or key < best[0]:
            best[0] = key
            best[1] = list(colors)

    def search(colors: list[int]) -> None:
        colors = _refine(n, members, inc, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            leaf(colors)
            return
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        tried = set()
        for v in cells[target]:
            if twin[v] in tried:
                continue
            tried.add(twin[v])
            split = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
            order = {s: i for i, s in enumerate(sorted(set(split)))}
            search([order[s] for s in split])

    search([0] * n)
    return (n, best[0]), best[1]


def canonical_form(H: Hypergraph, limit: int = CANONICAL_LIMIT) -> CanonicalKey:
    return canonical_labeling(H, limit)[0]


def canonical_representative(H: Hypergraph, limit: int = CANONICAL_LIMIT) -> tuple[CanonicalKey, Hypergraph]:
    key, _ = canonical_labeling(H, limit)
    return key, type(H)(key[0], key[1], H.r)


def is_isomorphic(A: Hypergraph, B: Hypergraph, limit: int = CANONICAL_LIMIT) -> bool:
    if A.n != B.n or A.m != B.m:
        return False
    return canonical_form(A, limit) == canonical_form(B, limit)
