"""Maximum matching (Edmonds' blossom algorithm) and minimum edge covers."""

from __future__ import annotations

from collections import deque

from .hypergraph import Graph, PreconditionViolation, bits, full_mask, popcount


def maximum_matching(G: Graph) -> list[tuple[int, int]]:
    """A maximum matching of ``G`` as sorted pairs."""
    n = G.n
    nbrs = [bits(a) for a in G.adj]
    match = [-1] * n

    def find_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    nxt = match[to]
                    used[nxt] = True
                    queue.append(nxt)
        return -1, parent

    # greedy warm start keeps the blossom phase short
    for v in range(n):
        if match[v] == -1:
            for u in nbrs[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    break
    for root in range(n):
        if match[root] != -1:
            continue
        v, parent = find_path(root)
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv
    return [(v, match[v]) for v in range(n) if match[v] > v]


def max_matching(G: Graph) -> int:
    return len(maximum_matching(G))


def _cover_cost(G: Graph, uncovered: int, allowed: list[int]) -> int | None:
    """Fewest ``allowed`` edges covering ``uncovered``; None if impossible."""
    reach = 0
    inside = []
    for e in allowed:
        reach |= e
        if e & uncovered == e:
            inside.append(e)
    if uncovered & ~reach:
        return None
    sub = Graph(G.n, tuple(inside))
    return popcount(uncovered) - max_matching(sub)


def min_edge_cover(G: Graph) -> list[tuple[int, int]]:
    """Lexicographically least minimum edge cover (Gallai: v(G) - nu(G) edges)."""
    if G.n and G.support != full_mask(G.n):
        iso = [v for v in range(G.n) if not G.support >> v & 1]
        raise PreconditionViolation(f"isolated vertices {iso} cannot be covered")
    target = G.n - max_matching(G)
    edges = list(G.edges)
    chosen: list[int] = []
    covered = 0
    last = -1
    everything = full_mask(G.n)
    while covered != everything:
        for j in range(last + 1, len(edges)):
            e = edges[j]
            cov = covered | e
            cost = _cover_cost(G, everything & ~cov, edges[j + 1:])
            if cost is not None and len(chosen) + 1 + cost == target:
                chosen.append(e)
                covered = cov
                last = j
                break
        else:  # pragma: no cover - Gallai guarantees a completion
            raise AssertionError("edge cover completion failed")
    return [bits(e) for e in chosen]  # type: ignore[misc]
