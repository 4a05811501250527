"""Classical domination/clique bounds as predicates, plus exhaustive graph harnesses."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
import multiprocessing

from .canon import is_isomorphic
from .constructions import cover_removed_graph
from .domination import gamma
from .hypergraph import Graph, InvalidArgument, count_hypercliques, popcount
from .oracles import default_workers, enumerate_graphs

GRAPH_ENUMERATION_LIMIT = 8


@dataclass(frozen=True)
class BoundCheck:
    name: str
    inputs: dict
    bound_value: int
    observed: int
    holds: bool
    equality_case: str | None = None
    direction: str = "<="

    def to_dict(self) -> dict:
        return asdict(self)


def is_clique_plus_isolated(G: Graph, size: int | None = None) -> bool:
    core = G.support
    k = popcount(core)
    if size is not None and k != size and not (size <= 1 and G.m == 0):
        return False
    return G.m == comb(k, 2)


# -- Kruskal-Katona ---------------------------------------------------------

def kk_check(G: Graph, r: int, x: int) -> BoundCheck:
    """If k_r(G) >= C(x, r) then k_r'(G) >= C(x, r') for every 2 <= r' < r."""
    if r < 2 or x < r:
        raise InvalidArgument("need 2 <= r <= x")
    kr = count_hypercliques(G, r)
    premise = kr >= comb(x, r)
    lower = {rp: count_hypercliques(G, rp) for rp in range(2, r)}
    holds = not premise or all(lower[rp] >= comb(x, rp) for rp in lower)
    tight = premise and G.m == comb(x, 2)
    tag = None
    if tight:
        tag = "clique" if is_clique_plus_isolated(G, x) else "other"
    return BoundCheck(
        "kruskal_katona",
        {"r": r, "x": x, "k_r": kr, "premise": premise},
        comb(x, 2),
        G.m,
        holds,
        tag,
        ">=",
    )


# -- Vizing / Fulman --------------------------------------------------------

def vizing_bound(n: int, k: int) -> int:
    if k < 2:
        raise InvalidArgument("k must be at least 2")
    if n < k:
        raise InvalidArgument("n must be at least k")
    return (n - k + 2) * (n - k) // 2


def vizing_extremal(n: int, k: int) -> Graph:
    """K_{n-k+2} minus a minimum edge cover, padded with k - 2 isolated vertices."""
    vizing_bound(n, k)
    base = cover_removed_graph(n - k + 2)
    return Graph(n, base.edges)


def fulman_bound(n: int, k: int, delta: int) -> int:
    if not 0 <= delta <= max(n - 1, 0):
        raise InvalidArgument("delta must lie in [0, n - 1]")
    return ((n - k) * (n - k + 2) - delta * (n - k - delta)) // 2


# -- domination-critical graphs ---------------------------------------------

def _non_edges(G: Graph):
    for u, v in itertools.combinations(range(G.n), 2):
        if not G.adjacent(u, v):
            yield u, v


def is_domination_critical(G: Graph, g: int | None = None) -> bool:
    g = gamma(G).gamma if g is None else g
    return all(gamma(G.add_edge((u, v))).gamma == g - 1 for u, v in _non_edges(G))


def identify_vertices(G: Graph, u: int, v: int) -> Graph:
    """Merge nonadjacent u and v; the merged vertex takes u's place."""
    if u == v or not (0 <= u < G.n and 0 <= v < G.n):
        raise InvalidArgument("u and v must be distinct vertices")
    if G.adjacent(u, v):
        raise InvalidArgument(f"{u} and {v} are adjacent")
    keep = [x for x in range(G.n) if x != v]
    pos = {x: i for i, x in enumerate(keep)}
    pos[v] = pos[u]
    edges = set()
    for a, b in (tuple(e) for e in G.edge_tuples()):
        pa, pb = pos[a], pos[b]
        if pa != pb:
            edges.add((min(pa, pb), max(pa, pb)))
    return Graph(G.n - 1, tuple(sorted(edges)))


# -- exhaustive harnesses ---------------------------------------------------

@dataclass(frozen=True)
class _Stats:
    n: int
    edges: tuple[int, ...]
    m: int
    gamma: int
    delta: int
    cliques: tuple[int, ...]  # k_2 .. k_{tmax}
    critical: bool
    identify_ok: int
    identify_total: int


def _graph_stats(job: tuple[int, tuple[int, ...], int]) -> _Stats:
    n, edges, tmax = job
    G = Graph(n, edges)
    g = gamma(G).gamma
    cliques = tuple(count_hypercliques(G, t) for t in range(2, tmax + 1))
    critical = is_domination_critical(G, g)
    ok = total = 0
    if critical:
        for u, v in _non_edges(G):
            total += 1
            ok += gamma(identify_vertices(G, u, v)).gamma == g - 1
    return _Stats(n, edges, G.m, g, G.max_degree, cliques, critical, ok, total)


def graph_catalogue(nmax: int, tmax: int = 4, workers: int | None = None) -> list[_Stats]:
    """Per-graph invariants for every graph with 1..nmax vertices up to isomorphism."""
    workers = workers or default_workers()
    jobs = []
    for n in range(1, nmax + 1):
        jobs.extend((n, G.edges, tmax) for G in enumerate_graphs(n, workers))
    if workers > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            return list(pool.map(_graph_stats, jobs, chunksize=32))
    return [_graph_stats(j) for j in jobs]


def _clique_count(st: _Stats, t: int) -> int:
    if t == 1:
        return st.n
    return st.cliques[t - 2]


def clique_domination_check(nmax: int, t: int, workers: int | None = None,
                            catalogue: list[_Stats] | None = None) -> list[BoundCheck]:
    """k_t(G) <= C(n-k+1, t) whenever gamma(G) >= k and n >= k + t - 1, per (n, k)."""
    if t < 2:
        raise InvalidArgument("t must be at least 2")
    nmax_used = min(nmax, GRAPH_ENUMERATION_LIMIT)
    cat = catalogue if catalogue is not None else graph_catalogue(nmax_used, max(t, 2), workers)
    out = []
    for n in range(1, nmax_used + 1):
        for k in range(1, n - t + 2):
            bound = comb(n - k + 1, t)
            pool = [st for st in cat if st.n == n and st.gamma >= k]
            if not pool:
                continue
            observed = max(_clique_count(st, t) for st in pool)
            tight = [st for st in pool if _clique_count(st, t) == bound]
            shape_ok = all(is_clique_plus_isolated(Graph(st.n, st.edges), n - k + 1) for st in tight)
            tag = None
            if tight:
                tag = "clique-plus-isolated" if shape_ok else "other"
            out.append(BoundCheck(
                "clique_domination",
                {"n": n, "k": k, "t": t, "graphs": len(pool)},
                bound, observed, observed <= bound and shape_ok, tag,
            ))
    if nmax > nmax_used:
        out.append(BoundCheck("clique_domination_partial", {"nmax": nmax, "enumerated_to": nmax_used},
                              nmax, nmax_used, False, "partial", "=="))
    return out


def _phi_of(st: _Stats) -> int:
    return st.n - st.gamma


@dataclass
class SuiteResult:
    checks: list[BoundCheck]
    nmax: int
    partial: bool = False
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.partial and all(c.holds for c in self.checks)


def bounds_suite(nmax: int, s_max: int = 4, t: int = 3, workers: int | None = None) -> SuiteResult:
    """Vizing, Fulman, edge and clique bounds under phi <= s, the clique-domination
    bound and the identification property over every graph on <= nmax vertices."""
    nmax_used = min(nmax, GRAPH_ENUMERATION_LIMIT)
    tmax = max(t, 4)
    cat = graph_catalogue(nmax_used, tmax, workers)
    checks: list[BoundCheck] = []

    for n in range(1, nmax_used + 1):
        graphs = [st for st in cat if st.n == n]
        for k in range(2, n + 1):
            pool = [st for st in graphs if st.gamma == k]
            if not pool:
                continue
            bound = vizing_bound(n, k)
            observed = max(st.m for st in pool)
            ext = vizing_extremal(n, k)
            tight = [st for st in pool if st.m == bound]
            unique = all(is_isomorphic(Graph(n, st.edges), ext) for st in tight)
            checks.append(BoundCheck("vizing", {"n": n, "k": k, "graphs": len(pool)}, bound, observed,
                                     observed <= bound and unique,
                                     ("cover-removed-clique" if unique else "other") if tight else None))
        for k in range(1, n + 1):
            for delta in range(0, n):
                pool = [st for st in graphs if st.gamma == k and st.delta == delta]
                if not pool:
                    continue
                bound = fulman_bound(n, k, delta)
                observed = max(st.m for st in pool)
                checks.append(BoundCheck("fulman", {"n": n, "k": k, "delta": delta, "graphs": len(pool)},
                                         bound, observed, observed <= bound))
        for s in range(1, s_max + 1):
            pool = [st for st in graphs if _phi_of(st) <= s]
            if not pool:
                continue
            bound = s * (s + 2) // 2
            observed = max(st.m for st in pool)
            target = cover_removed_graph(s + 2).drop_isolated()
            tight = [st for st in pool if st.m == bound]
            shape = all(is_isomorphic(Graph(n, st.edges).drop_isolated(), target) for st in tight)
            checks.append(BoundCheck("phi_edges", {"n": n, "s": s, "graphs": len(pool)}, bound, observed,
                                     observed <= bound and shape,
                                     ("cover-removed-clique" if shape else "other") if tight else None))
            for tt in range(max(t, 2), tmax + 1):
                bound_t = comb(s + 1, tt)
                observed_t = max(_clique_count(st, tt) for st in pool)
                checks.append(BoundCheck("phi_cliques", {"n": n, "s": s, "t": tt, "graphs": len(pool)},
                                         bound_t, observed_t, observed_t <= bound_t))
        crit = [st for st in graphs if st.critical]
        total = sum(st.identify_total for st in crit)
        ok = sum(st.identify_ok for st in crit)
        checks.append(BoundCheck("identification", {"n": n, "critical_graphs": len(crit)},
                                 total, ok, ok == total, None, "=="))
        kk_total = kk_ok = 0
        for st in graphs:
            G = Graph(n, st.edges)
            for r in range(3, min(n, 4) + 1):
                for x in range(r, n + 1):
                    kk_total += 1
                    kk_ok += kk_check(G, r, x).holds
        if kk_total:
            checks.append(BoundCheck("kruskal_katona", {"n": n, "instances": kk_total},
                                     kk_total, kk_ok, kk_ok == kk_total, None, "=="))

    checks.extend(clique_domination_check(nmax_used, t, catalogue=cat))
    partial = nmax > nmax_used
    summary = {
        "graphs": len(cat),
        "checks": len(checks),
        "failed": sum(not c.holds for c in checks),
        "by_name": _tally(checks),
    }
    return SuiteResult(checks, nmax_used, partial, summary)


def _tally(checks: list[BoundCheck]) -> dict:
    out: dict = {}
    for c in checks:
        row = out.setdefault(c.name, {"checks": 0, "failed": 0})
        row["checks"] += 1
        row["failed"] += not c.holds
    return out


def vizing_grid(ns=range(4, 11), ks=range(2, 5)) -> list[BoundCheck]:
    """The padded cover-removed clique reaches the bound with gamma exactly k."""
    out = []
    for n in ns:
        for k in ks:
            if k > n:
                continue
            G = vizing_extremal(n, k)
            g = gamma(G).gamma
            out.append(BoundCheck("vizing_extremal", {"n": n, "k": k, "gamma": g},
                                  vizing_bound(n, k), G.m, G.m == vizing_bound(n, k) and g == k,
                                  None, "=="))
    return out
