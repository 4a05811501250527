"""Exhaustive isomorph-free search for the extremal quantities.

States are explored level by level (one more edge per level).  Children of a
state are all ways to add one edge; infeasible children are dropped (every
constraint here is preserved by deleting edges, so this loses nothing) and
the rest are deduplicated by canonical key.  Within a level states are
handled in key order, so node counts, values and witnesses do not depend on
how many workers share the work.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
import multiprocessing

import numpy as np

from . import __version__, kernels
from .canon import CANONICAL_LIMIT, canonical_representative
from .domination import gamma, has_dominated_set, phi
from .hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    count_hypercliques,
    spanning_embeds,
    vset,
)
from .matching import max_matching
from .trace import contains_graph_trace, contains_matching_trace, forbidden_pattern_free

TASKS = ("f", "g", "h", "ex", "ex-pair")


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int | None = None
    max_edges: int | None = None
    node_limit: int | None = None
    time_limit: float | None = None

    def __post_init__(self) -> None:
        for name in ("max_vertices", "max_edges", "node_limit", "time_limit"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise InvalidArgument(f"{name} must be positive")


@dataclass
class SearchReport:
    task: str
    params: dict
    value: int
    witness: Hypergraph
    status: str
    nodes_explored: int
    elapsed_ms: float
    budget: SearchBudget
    notes: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "task": self.task,
            "params": self.params,
            "value": self.value,
            "status": self.status,
            "witness": witness_dict(self.witness),
            "nodes_explored": self.nodes_explored,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else None,
            "budget": asdict(self.budget),
            "notes": self.notes,
            "provenance": provenance(self.task, self.params, self.budget),
        }


def witness_dict(H: Hypergraph) -> dict:
    return {"n": H.n, "r": H.r, "edges": [list(e) for e in H.edge_tuples()]}


def provenance(task: str, params: dict, budget: SearchBudget) -> dict:
    blob = json.dumps({"task": task, "params": params, "budget": asdict(budget)}, sort_keys=True)
    return {"version": __version__, "config_sha256": hashlib.sha256(blob.encode()).hexdigest()}


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("TRACE_TURAN_WORKERS", "1")))
    except ValueError:
        return 1


# -- the search task --------------------------------------------------------

@dataclass(frozen=True)
class _Task:
    """Everything a worker needs to expand states; must stay picklable."""

    kind: str
    r: int
    s: int
    t: int | None = None
    F: tuple[int, tuple[int, ...]] | None = None
    n: int | None = None  # fixed vertex set when set, else isolated-free growth
    max_vertices: int = CANONICAL_LIMIT

    def graph_F(self) -> Graph | None:
        return None if self.F is None else Graph(self.F[0], self.F[1])

    def make(self, n: int, edges) -> Hypergraph:
        if self.r == 2:
            return Graph(n, tuple(edges))
        return Hypergraph(n, tuple(edges), self.r)

    def root(self) -> Hypergraph:
        return self.make(self.n or 0, ())

    def feasible(self, H: Hypergraph, F: Graph | None) -> bool:
        k = self.kind
        if k in ("f", "g", "h"):
            if has_dominated_set(H, self.s + 1):
                return False
            if k == "h":
                return forbidden_pattern_free(H, F)
            return True
        if k == "ex":
            return contains_matching_trace(H, self.s + 1) is None
        if k == "ex-pair":
            if contains_matching_trace(H, self.s + 1) is not None:
                return False
            return contains_graph_trace(H, F) is None
        if k == "all":
            return True
        raise InvalidArgument(f"unknown task {k!r}")

    def objective(self, H: Hypergraph) -> int:
        if self.kind == "g":
            return count_hypercliques(H, self.t)
        return H.m

    def children(self, H: Hypergraph):
        """(child, hit_vertex_cap) for every one-edge extension of ``H``."""
        r = self.r
        present = H.edge_set
        if self.n is not None:
            for c in itertools.combinations(range(H.n), r):
                e = vset(c)
                if e not in present:
                    yield self.make(H.n, H.edges + (e,)), False
            return
        for fresh in range(r + 1):
            if fresh and H.n + fresh > self.max_vertices:
                yield None, True
                continue
            if fresh == 0 and H.n < r:
                continue
            tail = vset(range(H.n, H.n + fresh))
            for c in itertools.combinations(range(H.n), r - fresh):
                e = vset(c) | tail
                if e not in present:
                    yield self.make(H.n + fresh, H.edges + (e,)), False


def _expand(task: _Task, states: list[tuple[int, tuple[int, ...]]]):
    """Objectives of ``states`` and their feasible canonical children."""
    F = task.graph_F()
    objectives = []
    found: dict = {}
    rejected: set = set()
    cap_hit = False
    for n, edges in states:
        H = task.make(n, edges)
        objectives.append(task.objective(H))
        for child, hit in task.children(H):
            if hit:
                cap_hit = True
                continue
            key, rep = canonical_representative(child)
            if key in found or key in rejected:
                continue
            if task.feasible(rep, F):
                found[key] = (rep.n, rep.edges)
            else:
                rejected.add(key)
    return objectives, found, cap_hit


def _chunks(items: list, parts: int) -> list[list]:
    if not items:
        return []
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


@dataclass
class _Outcome:
    value: int
    witness: Hypergraph
    nodes: int
    exhausted: bool
    edge_cap_binding: bool
    vertex_cap_binding: bool
    levels: int
    states: list | None = None


def _run(task: _Task, budget: SearchBudget, workers: int, collect: bool = False) -> _Outcome:
    start = time.monotonic()
    root = task.root()
    frontier = {canonical_representative(root)[0]: (root.n, root.edges)}
    best_value, best_key, best_state = -1, None, None
    nodes = 0
    exhausted = True
    edge_cap = False
    vertex_cap = False
    level = 0
    gathered: list | None = [] if collect else None
    pool = None
    if workers > 1:
        ctx = multiprocessing.get_context("fork")
        pool = ProcessPoolExecutor(max_workers=workers, mp_context=ctx)
    try:
        while frontier:
            keys = sorted(frontier)
            if budget.node_limit is not None:
                room = budget.node_limit - nodes
                if room < len(keys):
                    keys = keys[:max(room, 0)]
                    exhausted = False
            if budget.time_limit is not None and time.monotonic() - start > budget.time_limit:
                exhausted = False
                break
            states = [frontier[k] for k in keys]
            at_cap = budget.max_edges is not None and level >= budget.max_edges
            chunks = _chunks(states, 4 * workers if pool else 1)
            if pool:
                results = list(pool.map(_expand, [task] * len(chunks), chunks))
            else:
                results = [_expand(task, c) for c in chunks]
            nxt: dict = {}
            flat_obj = [o for objs, _, _ in results for o in objs]
            for key, value in zip(keys, flat_obj):
                if value > best_value or (value == best_value and key < best_key):
                    best_value, best_key, best_state = value, key, frontier[key]
            for _, found, hit in results:
                vertex_cap |= hit
                nxt.update(found)
            if gathered is not None:
                gathered.extend(states)
            nodes += len(keys)
            if at_cap:
                edge_cap = edge_cap or bool(nxt)
                break
            if not exhausted:
                break
            frontier = nxt
            level += 1
    finally:
        if pool:
            pool.shutdown()
    witness = task.make(*best_state) if best_state is not None else root
    return _Outcome(best_value, witness, nodes, exhausted, edge_cap, vertex_cap, level, gathered)


# -- public oracles ---------------------------------------------------------

def _resolve(budget: SearchBudget | None, bound: int) -> SearchBudget:
    budget = budget or SearchBudget()
    if budget.max_vertices is None:
        budget = SearchBudget(bound, budget.max_edges, budget.node_limit, budget.time_limit)
    return budget


def _report(task_id: str, params: dict, task: _Task, budget: SearchBudget, workers: int | None,
            theory_vertices: int | None = None) -> SearchReport:
    t0 = time.monotonic()
    out = _run(task, budget, workers or default_workers())
    elapsed = (time.monotonic() - t0) * 1000
    complete = out.exhausted and not out.edge_cap_binding
    notes = {
        "exhausted": out.exhausted,
        "edge_cap_binding": out.edge_cap_binding,
        "levels": out.levels,
    }
    if theory_vertices is not None:
        notes["vertex_cap_binding"] = out.vertex_cap_binding
        notes["vertex_bound"] = theory_vertices
        enough = budget.max_vertices >= theory_vertices
        if not enough:
            notes["reason"] = "max_vertices below the isolated-vertex-free bound 3r(s+1)"
        complete = complete and enough
    if not out.exhausted:
        notes["reason"] = "node or time limit reached"
    elif out.edge_cap_binding:
        notes["reason"] = "max_edges cap cut off feasible extensions"
    notes["witness_verified"] = _verify_witness(task, out.witness, out.value)
    return SearchReport(task_id, params, out.value, out.witness,
                        "exact" if complete else "lower_bound",
                        out.nodes, elapsed, budget, notes)


def _verify_witness(task: _Task, W: Hypergraph, value: int) -> bool:
    """Recheck the witness with the independent (non-kernel) routines."""
    if task.kind in ("f", "g", "h"):
        ok = task.n is not None or not W.has_isolated
        ok = ok and W.n - gamma(W).gamma <= task.s
        if task.kind == "h":
            ok = ok and forbidden_pattern_free(W, task.graph_F())
    elif task.kind == "ex":
        ok = contains_matching_trace(W, task.s + 1, engine="reference") is None
    else:
        ok = (contains_matching_trace(W, task.s + 1, engine="reference") is None
              and contains_graph_trace(W, task.graph_F()) is None)
    return bool(ok) and task.objective(W) == value


def _check_rs(r: int, s: int) -> None:
    if r < 2:
        raise InvalidArgument("r must be at least 2")
    if s < 0:
        raise InvalidArgument("s must be nonnegative")


def oracle_f(r: int, s: int, budget: SearchBudget | None = None, workers: int | None = None) -> SearchReport:
    """Most edges in an r-graph without isolated vertices and phi <= s."""
    _check_rs(r, s)
    bound = 3 * r * (s + 1)
    budget = _resolve(budget, bound)
    task = _Task("f", r, s, max_vertices=budget.max_vertices)
    return _report("f", {"r": r, "s": s}, task, budget, workers, bound)


def oracle_g(r: int, s: int, t: int, budget: SearchBudget | None = None, workers: int | None = None) -> SearchReport:
    """Most copies of K^r_t under the same constraints as :func:`oracle_f`."""
    _check_rs(r, s)
    if t < r:
        raise InvalidArgument("t must be at least r")
    bound = 3 * r * (s + 1)
    budget = _resolve(budget, bound)
    task = _Task("g", r, s, t=t, max_vertices=budget.max_vertices)
    return _report("g", {"r": r, "s": s, "t": t}, task, budget, workers, bound)


def oracle_h(r: int, s: int, F: Graph, budget: SearchBudget | None = None, workers: int | None = None) -> SearchReport:
    """Most edges with phi <= s and no dominated copy of (F - I, N(I))."""
    _check_rs(r, s)
    bound = 3 * r * (s + 1)
    budget = _resolve(budget, bound)
    task = _Task("h", r, s, F=(F.n, F.edges), max_vertices=budget.max_vertices)
    params = {"r": r, "s": s, "F": witness_dict(F)}
    return _report("h", params, task, budget, workers, bound)


def _fixed_budget(budget: SearchBudget | None, n: int) -> SearchBudget:
    budget = budget or SearchBudget()
    return SearchBudget(n, budget.max_edges, budget.node_limit, budget.time_limit)


def oracle_ex_matching(r: int, s: int, n: int, budget: SearchBudget | None = None,
                       workers: int | None = None, double_check: bool = True) -> SearchReport:
    """ex_r(n, Tr(M_{s+1})) on exactly ``n`` vertices."""
    _check_rs(r, s)
    if n < r:
        raise InvalidArgument("n must be at least r")
    if n > CANONICAL_LIMIT:
        raise InvalidArgument(f"n must be at most {CANONICAL_LIMIT}")
    budget = _fixed_budget(budget, n)
    task = _Task("ex", r, s, n=n, max_vertices=n)
    rep = _report("ex", {"r": r, "s": s, "n": n}, task, budget, workers)
    if double_check and comb(n, r) <= FULL_ENUMERATION_LIMIT:
        full = full_enumeration_ex(r, n, s + 1, None)
        rep.notes["full_enumeration"] = full.value
        rep.notes["full_enumeration_agrees"] = full.value == rep.value
    if r == 3 and s >= 1 and n >= s + 2:
        formula = (s * (s + 2) // 2) * (n - s - 2) + comb(s + 2, 3)
        rep.notes["large_n_formula"] = formula
    return rep


def oracle_ex_pair(r: int, s: int, F: Graph, n: int, budget: SearchBudget | None = None,
                   workers: int | None = None, double_check: bool = True) -> SearchReport:
    """ex_r(n, {Tr(M_{s+1}), Tr(F)}) on exactly ``n`` vertices."""
    _check_rs(r, s)
    if n < r:
        raise InvalidArgument("n must be at least r")
    if n > CANONICAL_LIMIT:
        raise InvalidArgument(f"n must be at most {CANONICAL_LIMIT}")
    budget = _fixed_budget(budget, n)
    task = _Task("ex-pair", r, s, F=(F.n, F.edges), n=n, max_vertices=n)
    rep = _report("ex-pair", {"r": r, "s": s, "n": n, "F": witness_dict(F)}, task, budget, workers)
    if double_check and comb(n, r) <= FULL_ENUMERATION_LIMIT:
        full = full_enumeration_ex(r, n, s + 1, F)
        rep.notes["full_enumeration"] = full.value
        rep.notes["full_enumeration_agrees"] = full.value == rep.value
    return rep


# -- labeled enumeration (independent check) -------------------------------

FULL_ENUMERATION_LIMIT = 22


@dataclass(frozen=True)
class FullEnumeration:
    value: int
    witness: Hypergraph
    maximizers: int
    feasible: int


def _local_pair_index(size: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(itertools.combinations(range(size), 2))}


def _pair_table(size: int, test) -> np.ndarray:
    """``table[mask]`` = test(local exact-pair graph with pair bits ``mask``)."""
    pairs = list(itertools.combinations(range(size), 2))
    out = np.zeros(1 << len(pairs), dtype=bool)
    for mask in range(1 << len(pairs)):
        G = Graph(size, tuple(pairs[i] for i in range(len(pairs)) if mask >> i & 1))
        out[mask] = test(G)
    return out


def scan_inputs(r: int, n: int, k: int | None, F: Graph | None):
    """(universe, pairbits, fam, tables) for :func:`kernels.labeled_scan`, or
    ``None`` pairbits when nothing can be forbidden on ``n`` vertices."""
    universe = [vset(c) for c in itertools.combinations(range(n), r)]
    if len(universe) > FULL_ENUMERATION_LIMIT + 8:
        raise InvalidArgument("labeled enumeration too large")
    families = []
    if k is not None and 2 * k <= n:
        families.append((2 * k, _pair_table(2 * k, lambda G: 2 * max_matching(G) == G.n)))
    if F is not None and F.n <= n:
        families.append((F.n, _pair_table(F.n, lambda G: spanning_embeds(F, G) is not None)))
    if not families:
        return universe, None, None, None
    width = max(len(t) for _, t in families)
    tables = np.zeros((len(families), width), dtype=bool)
    columns, fam = [], []
    for fi, (size, table) in enumerate(families):
        tables[fi, :len(table)] = table
        index = _local_pair_index(size)
        for S in itertools.combinations(range(n), size):
            pos = {v: i for i, v in enumerate(S)}
            Smask = vset(S)
            col = []
            for e in universe:
                hit = e & Smask
                members = [v for v in S if hit >> v & 1]
                col.append(1 << index[(pos[members[0]], pos[members[1]])] if len(members) == 2 else 0)
            columns.append(col)
            fam.append(fi)
    pairbits = np.array(columns, dtype=np.int64).T.copy()
    return universe, pairbits, np.array(fam, dtype=np.int64), tables


def full_enumeration_ex(r: int, n: int, k: int | None, F: Graph | None) -> FullEnumeration:
    """Scan all 2^C(n,r) labeled r-graphs; forbid an M_k trace and/or an F trace."""
    universe, pairbits, fam, tables = scan_inputs(r, n, k, F)
    if pairbits is None:
        H = Hypergraph(n, tuple(universe), r)
        return FullEnumeration(len(universe), H, 1, 1 << len(universe))
    best, mask, n_best, n_good = kernels.labeled_scan(pairbits, fam, tables)
    chosen = tuple(universe[i] for i in range(len(universe)) if mask >> i & 1)
    H = Graph(n, chosen) if r == 2 else Hypergraph(n, chosen, r)
    return FullEnumeration(best, H, n_best, n_good)


def labeled_extremum(kind: str, r: int, s: int, vertices: int, max_edges: int,
                     t: int | None = None, F: Graph | None = None) -> int:
    """Brute-force f/g/h over labeled r-graphs on ``vertices`` with <= ``max_edges`` edges."""
    universe = [vset(c) for c in itertools.combinations(range(vertices), r)]
    best = 0
    for m in range(0, min(max_edges, len(universe)) + 1):
        for combo in itertools.combinations(universe, m):
            H = Graph(vertices, combo) if r == 2 else Hypergraph(vertices, combo, r)
            if phi(H) > s:
                continue
            if kind == "h" and not forbidden_pattern_free(H, F):
                continue
            value = count_hypercliques(H, t) if kind == "g" else m
            best = max(best, value)
    return best


# -- graph enumeration -----------------------------------------------------

def enumerate_graphs(n: int, workers: int | None = None) -> list[Graph]:
    """All graphs on exactly ``n`` vertices up to isomorphism, in key order per edge count."""
    if n > CANONICAL_LIMIT:
        raise InvalidArgument(f"n must be at most {CANONICAL_LIMIT}")
    task = _Task("all", 2, 0, n=n, max_vertices=n)
    out = _run(task, SearchBudget(), workers or default_workers(), collect=True)
    return [Graph(v, e) for v, e in out.states]
