"""Seeded verification suites and the conjecture comparison grid.

Each random instance is drawn from its own ``Random((seed, index))`` stream,
so sharding across workers never changes which instances are generated.
"""

from __future__ import annotations

import itertools
import multiprocessing
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .constructions import (
    ConstructionSpec,
    build,
    conjecture1_candidates,
    conjecture2_candidate,
    cover_removed_graph,
    predicted_counts,
    thm2_construction,
    thm3_construction,
)
from .domination import decompose, gamma, heavy_threshold, is_dominated, is_dominating, max_dominated_set, phi
from .hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    bits,
    complete_graph,
    complete_hypergraph,
    count_hypercliques,
    full_mask,
    matching_graph,
    vset,
)
from .oracles import SearchBudget, SearchReport, default_workers, oracle_f, oracle_g
from .trace import contains_graph_trace, contains_matching_trace


@dataclass
class SuiteReport:
    name: str
    seed: int | None
    instances: int
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "instances": self.instances,
            "violations": self.violations,
            "passed": self.passed,
            "details": self.details,
        }


def random_hypergraph(rng: random.Random, n: int, r: int, p: float | None = None) -> Hypergraph:
    p = rng.random() if p is None else p
    edges = [vset(c) for c in itertools.combinations(range(n), r) if rng.random() < p]
    if r == 2:
        return Graph(n, tuple(edges))
    return Hypergraph(n, tuple(edges), r)


def _map(fn, jobs: list, workers: int | None) -> list:
    workers = workers or default_workers()
    if workers > 1 and len(jobs) > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [fn(j) for j in jobs]


# -- gamma + phi = n ----------------------------------------------------------

def _complement_case(job: tuple[int, int]):
    seed, i = job
    rng = random.Random(f"complement:{seed}:{i}")
    r = rng.choice((2, 3))
    n = rng.randint(r, 10)
    # sparse draws matter most; dense ones are dominated by a vertex or two
    H = random_hypergraph(rng, n, r, rng.random() ** 2)
    res = gamma(H)
    direct, wit = max_dominated_set(H)
    problems = []
    if res.gamma + direct != n:
        problems.append("gamma + phi != n")
    if not is_dominating(H, res.witness_dominating):
        problems.append("dominating witness fails")
    if not is_dominated(H, wit):
        problems.append("dominated witness fails")
    comp = full_mask(n) & ~wit
    if is_dominated(H, wit) != is_dominating(H, comp):
        problems.append("dominated/dominating complement mismatch")
    if problems:
        return {"index": i, "n": n, "r": r, "edges": [list(e) for e in H.edge_tuples()], "problems": problems}
    return None


def complement_suite(count: int = 1000, seed: int = 0, workers: int | None = None) -> SuiteReport:
    rows = _map(_complement_case, [(seed, i) for i in range(count)], workers)
    return SuiteReport("complement", seed, count, [x for x in rows if x is not None])


# -- trace engines --------------------------------------------------------------

def _engine_case(job: tuple[int, int]):
    seed, i = job
    rng = random.Random(f"engines:{seed}:{i}")
    n = rng.randint(3, 9)
    k = rng.randint(1, 3)
    H = random_hypergraph(rng, n, 3, rng.random() ** 2)
    a = contains_matching_trace(H, k, engine="pruned")
    b = contains_matching_trace(H, k, engine="reference")
    bad = (a is None) != (b is None)
    bad = bad or (a is not None and not a.verify(H)) or (b is not None and not b.verify(H))
    if bad:
        return {"index": i, "n": n, "k": k, "edges": [list(e) for e in H.edge_tuples()],
                "pruned": None if a is None else a.to_dict(H),
                "reference": None if b is None else b.to_dict(H)}
    return (a is not None,)


def _graph_trace_case(job: tuple[int, int]):
    seed, i = job
    rng = random.Random(f"graph-trace:{seed}:{i}")
    r = rng.choice((2, 3))
    n = rng.randint(r, 8)
    k = rng.randint(1, 3)
    H = random_hypergraph(rng, n, r, rng.random() ** 2)
    a = contains_graph_trace(H, matching_graph(k))
    b = contains_matching_trace(H, k)
    if (a is None) != (b is None):
        return {"index": i, "n": n, "r": r, "k": k, "edges": [list(e) for e in H.edge_tuples()],
                "graph_trace": a is not None, "matching_trace": b is not None}
    return (a is not None,)


def engines_suite(count: int = 1000, graph_count: int = 500, seed: int = 0,
                  workers: int | None = None) -> SuiteReport:
    rows = _map(_engine_case, [(seed, i) for i in range(count)], workers)
    grows = _map(_graph_trace_case, [(seed, i) for i in range(graph_count)], workers)
    bad = [x for x in rows if isinstance(x, dict)] + [x for x in grows if isinstance(x, dict)]
    details = {
        "matching_instances": count,
        "matching_present": sum(1 for x in rows if isinstance(x, tuple) and x[0]),
        "graph_instances": graph_count,
        "graph_present": sum(1 for x in grows if isinstance(x, tuple) and x[0]),
    }
    return SuiteReport("engines", seed, count + graph_count, bad, details)


# -- heavy-set graph has small phi ---------------------------------------------

def heavy_core_corpus(witnesses: list[tuple[str, Hypergraph, int]] | None = None):
    """(label, hypergraph, s) triples: cone constructions plus supplied witnesses."""
    out = []
    for s in (1, 2, 3):
        for n in range(s + 3, 16):
            out.append((f"thm3 s={s} n={n}", thm3_construction(s, n), s))
    for s in (1, 2, 3):
        base = cover_removed_graph(s + 2).drop_isolated()
        for n in range(base.n + 1, 13):
            out.append((f"thm2 s={s} n={n}", thm2_construction(base, n), s))
    out.extend(witnesses or [])
    return out


def heavy_core_suite(witnesses: list[tuple[str, Hypergraph, int]] | None = None) -> SuiteReport:
    rows = []
    bad = []
    for label, H, s in heavy_core_corpus(witnesses):
        r = H.uniformity or H.r or 2
        dec = decompose(H, heavy_threshold(r, s))
        value = phi(dec.G2)
        free = contains_matching_trace(H, s + 1) is None
        rows.append({"label": label, "s": s, "phi_G2": value, "heavy_sets": dec.G2.m, "trace_free": free})
        if value > s:
            bad.append(rows[-1])
    return SuiteReport("heavy-core", None, len(rows), bad, {"cases": rows})


# -- construction verification ------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool | None  # None = skipped
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "skipped" if self.passed is None else ("pass" if self.passed else "fail"),
                **self.detail}


CHECK_NAMES = ("trace-free", "counts", "phi-base", "decomposition")


def _design_s(spec: ConstructionSpec) -> int:
    if spec.s is not None:
        return spec.s
    if spec.base is not None:
        return phi(spec.base)
    raise InvalidArgument("parameter s is required")


def construction_base(spec: ConstructionSpec) -> Hypergraph | None:
    k = spec.kind
    if k in ("thm2", "thm6"):
        return spec.base
    if k == "thm3":
        return cover_removed_graph(spec.s + 2)
    if k == "thm4":
        return complete_hypergraph(spec.s + spec.r - 2, spec.r - 1)
    if k == "thm5":
        return complete_graph(spec.s + 1)
    return None


def verify_construction(spec: ConstructionSpec, H: Hypergraph | None = None,
                        checks=CHECK_NAMES) -> list[Check]:
    """Run the selected invariants on ``H`` (built from ``spec`` when omitted)."""
    H = build(spec) if H is None else H
    s = _design_s(spec)
    pred = predicted_counts(spec)
    base = construction_base(spec)
    out = []
    for name in checks:
        if name == "trace-free":
            core = contains_matching_trace(H, s + 1, engine="reference")
            detail = {"matching": s + 1}
            if core is not None:
                detail["core"] = core.to_dict(H)
            out.append(Check(name, core is None, detail))
        elif name == "counts":
            detail = {"edges": H.m, "predicted_edges": pred.edges}
            ok = H.m == pred.edges
            if pred.cliques_t is not None:
                got = count_hypercliques(H, pred.t)
                detail.update({"t": pred.t, "cliques": got, "predicted_cliques": pred.cliques_t})
                ok = ok and got == pred.cliques_t
            out.append(Check(name, ok, detail))
        elif name == "phi-base":
            if base is None:
                out.append(Check(name, None, {"reason": "no base for this kind"}))
                continue
            value = phi(base)
            out.append(Check(name, value <= s, {"phi": value, "s": s}))
        elif name == "decomposition":
            out.append(_decomposition_check(spec, H, s, base, pred.flags))
        else:
            raise InvalidArgument(f"unknown check {name!r}")
    return out


def _decomposition_check(spec, H, s, base, flags) -> Check:
    name = "decomposition"
    if base is None or spec.kind not in ("thm2", "thm3", "thm5", "thm6"):
        return Check(name, None, {"reason": "cone-structure check applies to graph-based cones"})
    if "small-n" in flags:
        return Check(name, None, {"reason": "small-n: too few cone vertices for heavy pairs"})
    r = H.uniformity or (base.uniformity or 1) + 1
    dec = decompose(H, heavy_threshold(r, s))
    U = full_mask(base.n)
    want = set(base.edges)
    reproduces = set(dec.G2.edges) == want
    stray = [e for e in H.edges if not (e & ~U == 0 or (e & U) in want and (e & ~U).bit_count() == 1)]
    detail = {"heavy_sets": [list(bits(e)) for e in dec.G2.edges],
              "stray_edges": [list(bits(e)) for e in stray],
              "phi_G2": phi(dec.G2)}
    return Check(name, reproduces and not stray, detail)


# -- conjecture grid -------------------------------------------------------------

@dataclass
class ConjectureCell:
    conjecture: str
    r: int
    s: int
    t: int | None
    candidates: dict
    report: SearchReport
    verdict: str

    def to_dict(self, timing: bool = True) -> dict:
        rep = self.report
        return {
            "conjecture": self.conjecture,
            "r": self.r,
            "s": self.s,
            "t": self.t,
            "candidates": self.candidates,
            "value": rep.value,
            "status": rep.status,
            "nodes_explored": rep.nodes_explored,
            "budget_exhausted": rep.notes.get("exhausted", False) and not rep.notes.get("edge_cap_binding"),
            "verdict": self.verdict,
            "witness": [list(e) for e in rep.witness.edge_tuples()],
            "elapsed_ms": round(rep.elapsed_ms, 3) if timing else None,
        }


def verdict(report: SearchReport, best_candidate: int) -> str:
    if report.value > best_candidate:
        return "refuted-with-witness"
    exhausted = report.notes.get("exhausted", False) and not report.notes.get("edge_cap_binding", False)
    if exhausted and report.value == best_candidate:
        return "confirmed-at-budget"
    return "open"


DEFAULT_GRID = (
    (2, 1), (2, 2), (2, 3), (2, 4),
    (3, 1), (3, 2), (3, 3),
)


def conjecture_report(cells=DEFAULT_GRID, node_limit: int = 2000, max_vertices: int | None = None,
                      time_limit: float | None = None, workers: int | None = None,
                      clique_ts: dict | None = None) -> list[ConjectureCell]:
    """Compare both conjecture families against the exhaustive oracles."""
    out = []
    for r, s in cells:
        A, B = conjecture1_candidates(r, s)
        budget = SearchBudget(max_vertices=max_vertices, node_limit=node_limit, time_limit=time_limit)
        rep = oracle_f(r, s, budget, workers)
        cand = {"complete": A.m, "covered_removal": B.m}
        out.append(ConjectureCell("f", r, s, None, cand, rep, verdict(rep, max(cand.values()))))
        if clique_ts is not None:
            ts = clique_ts.get((r, s), ())
        else:
            ts = range(r + 1, s + r) if r == 2 or s <= 2 else ()
        for t in ts:
            K = conjecture2_candidate(r, s)
            rep_g = oracle_g(r, s, t, budget, workers)
            cand_g = {"complete": count_hypercliques(K, t)}
            out.append(ConjectureCell("g", r, s, t, cand_g, rep_g, verdict(rep_g, cand_g["complete"])))
    return out


def expected_phi_edges(s: int) -> int:
    return s * (s + 2) // 2


def expected_phi_cliques(s: int, t: int) -> int:
    return comb(s + 1, t)
