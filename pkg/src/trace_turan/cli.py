"""Command-line entry point: ``trace-turan <command> ...``.

Exit codes: 0 success, 1 a verification/property check failed, 2 usage or
input error, 3 a search budget ran out before the answer was certain.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys

from . import __version__
from .bounds import bounds_suite
from .constructions import KINDS, ConstructionSpec, build, predicted_counts
from .domination import decompose, gamma, heavy_threshold, max_dominated_set
from .hypergraph import (
    BudgetExceeded,
    FormatError,
    Graph,
    Hypergraph,
    InvalidArgument,
    PreconditionViolation,
    bits,
    format_hypergraph,
    read_hypergraph,
)
from .oracles import (
    TASKS,
    SearchBudget,
    default_workers,
    oracle_ex_matching,
    oracle_ex_pair,
    oracle_f,
    oracle_g,
    oracle_h,
)
from .suites import (
    CHECK_NAMES,
    DEFAULT_GRID,
    complement_suite,
    conjecture_report,
    engines_suite,
    heavy_core_suite,
    verify_construction,
)
from .trace import ENGINES, contains_graph_trace, contains_matching_trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# flags that never change results; kept out of the config hash
_VOLATILE = {"workers", "output", "format", "stable", "handler"}


class UsageError(Exception):
    pass


def _edges(mask_list) -> list[list[int]]:
    return [list(bits(e)) for e in mask_list]


def _load(path: str) -> Hypergraph:
    return read_hypergraph(path)


def _load_graph(path: str) -> Graph:
    G = read_hypergraph(path)
    if not isinstance(G, Graph):
        raise UsageError(f"{path}: expected a graph file (r = 2)")
    return G


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _VOLATILE}


def _provenance(args: argparse.Namespace) -> dict:
    blob = json.dumps(_config(args), sort_keys=True, default=str)
    return {"version": __version__, "config_sha256": hashlib.sha256(blob.encode()).hexdigest()}


def _envelope(args: argparse.Namespace, results, status: int) -> dict:
    return {
        "command": args.command,
        "config": _config(args),
        "results": results,
        "provenance": _provenance(args),
        "exit_status": status,
    }


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({c: json.dumps(row[c], sort_keys=True) if isinstance(row[c], (dict, list)) else row[c]
                         for c in columns})
    return buf.getvalue()


def _finish(args, results, status: int, text: str | None = None, table=None) -> int:
    fmt = args.format or "json"
    if fmt == "json":
        _emit(args, _dump(_envelope(args, results, status)))
    elif fmt == "csv":
        if table is None:
            raise UsageError(f"{args.command} has no flat table; use --format json or text")
        _emit(args, _csv(*table))
    else:
        _emit(args, text if text is not None else _dump(results))
    return status


# -- commands --------------------------------------------------------------

def cmd_phi(args) -> int:
    H = _load(args.file)
    value, wit = max_dominated_set(H)
    res = {"n": H.n, "phi": value, "witness": list(bits(wit))}
    status = EXIT_OK
    if args.cross_check:
        g = gamma(H)
        res["gamma"] = g.gamma
        res["agrees"] = g.gamma + value == H.n
        status = EXIT_OK if res["agrees"] else EXIT_FAIL
    return _finish(args, res, status, f"phi = {value}  witness {list(bits(wit))}\n")


def cmd_gamma(args) -> int:
    H = _load(args.file)
    g = gamma(H)
    res = {
        "n": H.n,
        "gamma": g.gamma,
        "phi": g.phi,
        "witness_dominating": list(bits(g.witness_dominating)),
        "witness_dominated": list(bits(g.witness_dominated)),
    }
    return _finish(args, res, EXIT_OK, f"gamma = {g.gamma}  witness {res['witness_dominating']}\n")


def cmd_decompose(args) -> int:
    H = _load(args.file)
    if args.threshold is not None:
        threshold = args.threshold
    elif args.s is not None:
        r = H.uniformity or H.r
        if r is None:
            raise UsageError("cannot infer uniformity of an empty, untagged hypergraph")
        threshold = heavy_threshold(r, args.s, args.vf)
    else:
        raise UsageError("give --threshold or --s")
    dec = decompose(H, threshold)
    res = {"threshold": threshold, "G2": _edges(dec.G2.edges), "H1": _edges(dec.H1), "H2": _edges(dec.H2)}
    text = f"threshold {threshold}: |G2| = {dec.G2.m}, |H1| = {len(dec.H1)}, |H2| = {len(dec.H2)}\n"
    return _finish(args, res, EXIT_OK, text)


def cmd_find_trace(args) -> int:
    H = _load(args.file)
    if (args.matching is None) == (args.graph is None):
        raise UsageError("give exactly one of --matching or --graph")
    if args.matching is not None:
        core = contains_matching_trace(H, args.matching, engine=args.engine)
        if core is None:
            res: dict | str = "absent"
        else:
            res = {"kind": "matching", "k": args.matching, "core": core.to_dict(H)}
    else:
        F = _load_graph(args.graph)
        hit = contains_graph_trace(H, F)
        if hit is None:
            res = "absent"
        else:
            S, lam = hit
            res = {"kind": "graph", "S": list(bits(S)), "mapping": list(lam)}
    if res == "absent":
        text = "absent\n"
    elif res["kind"] == "matching":
        text = "core " + " ".join(f"{{{a},{b}}}" for a, b in res["core"]["pairs"]) + "\n"
    else:
        text = f"S = {res['S']}  mapping {res['mapping']}\n"
    return _finish(args, res, EXIT_OK, text)


def _spec(args) -> ConstructionSpec:
    base = _load(args.base) if getattr(args, "base", None) else None
    return ConstructionSpec(args.kind, args.r, args.s, args.t, args.n, base)


def cmd_construct(args) -> int:
    spec = _spec(args)
    H = build(spec)
    pred = predicted_counts(spec)
    res = {"kind": spec.kind, "n": H.n, "r": H.r, "edges": _edges(H.edges), "predicted": pred.to_dict()}
    comment = [f"construction {spec.kind}", "predicted " + json.dumps(pred.to_dict(), sort_keys=True)]
    if (args.format or "text") == "text":
        _emit(args, format_hypergraph(H, comment))
        return EXIT_OK
    return _finish(args, res, EXIT_OK)


def cmd_verify(args) -> int:
    if args.suite:
        return _verify_suite(args)
    if args.kind is None:
        raise UsageError("give --kind (with parameters) or --suite")
    spec = _spec(args)
    H = _load(args.file) if args.file else None
    checks = args.checks.split(",") if args.checks else list(CHECK_NAMES)
    unknown = [c for c in checks if c not in CHECK_NAMES]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; pick from {list(CHECK_NAMES)}")
    results = verify_construction(spec, H, checks)
    failed = any(c.passed is False for c in results)
    rows = [c.to_dict() for c in results]
    text = "".join(f"{r['name']}: {r['status']}\n" for r in rows)
    return _finish(args, {"kind": spec.kind, "checks": rows}, EXIT_FAIL if failed else EXIT_OK, text)


def _verify_suite(args) -> int:
    seed = args.seed
    reports = []
    wanted = ["complement", "engines", "heavy-core"] if args.suite == "all" else [args.suite]
    for name in wanted:
        if name == "complement":
            reports.append(complement_suite(args.count or 1000, seed, args.workers))
        elif name == "engines":
            reports.append(engines_suite(args.count or 1000, (args.count or 1000) // 2, seed, args.workers))
        else:
            reports.append(heavy_core_suite())
    ok = all(r.passed for r in reports)
    rows = [r.to_dict() for r in reports]
    text = "".join(f"{r['suite']}: {'pass' if r['passed'] else 'FAIL'} "
                   f"({r['instances']} instances, {len(r['violations'])} violations)\n" for r in rows)
    return _finish(args, {"checks": rows}, EXIT_OK if ok else EXIT_FAIL, text)


def cmd_oracle(args) -> int:
    budget = SearchBudget(args.max_vertices, args.max_edges, args.node_limit, args.time_limit)
    task = args.task
    need = {"g": ["t"], "h": ["graph"], "ex": ["n"], "ex-pair": ["n", "graph"]}.get(task, [])
    missing = [f"--{x}" for x in need if getattr(args, x) is None]
    if missing:
        raise UsageError(f"oracle {task} needs {' '.join(missing)}")
    if task == "f":
        rep = oracle_f(args.r, args.s, budget, args.workers)
    elif task == "g":
        rep = oracle_g(args.r, args.s, args.t, budget, args.workers)
    elif task == "h":
        rep = oracle_h(args.r, args.s, _load_graph(args.graph), budget, args.workers)
    elif task == "ex":
        rep = oracle_ex_matching(args.r, args.s, args.n, budget, args.workers)
    else:
        rep = oracle_ex_pair(args.r, args.s, _load_graph(args.graph), args.n, budget, args.workers)
    res = rep.to_dict(timing=not args.stable)
    status = EXIT_OK
    if not rep.notes.get("exhausted", True):
        status = EXIT_BUDGET
    elif rep.notes.get("full_enumeration_agrees") is False or not rep.notes.get("witness_verified", True):
        status = EXIT_FAIL
    text = f"{task} {rep.params}: value {rep.value} ({rep.status}), {rep.nodes_explored} nodes\n"
    return _finish(args, res, status, text)


def cmd_bounds_suite(args) -> int:
    res = bounds_suite(args.nmax, args.s, args.t, args.workers)
    rows = [c.to_dict() for c in res.checks]
    status = EXIT_OK if res.passed else (EXIT_BUDGET if res.partial else EXIT_FAIL)
    payload = {"checks": rows, "summary": res.summary, "nmax": res.nmax, "partial": res.partial}
    columns = ["name", "inputs", "bound_value", "observed", "holds", "equality_case", "direction"]
    text = "".join(f"{name}: {v['checks'] - v['failed']}/{v['checks']} hold\n"
                   for name, v in sorted(res.summary["by_name"].items()))
    return _finish(args, payload, status, text, (rows, columns))


def cmd_conjectures(args) -> int:
    if args.r is None and args.s_max is None:
        cells = list(DEFAULT_GRID)
    else:
        cells = [(r, s) for r in (args.r or [2, 3]) for s in range(1, (args.s_max or 3) + 1)]
    grid = conjecture_report(cells, node_limit=args.node_limit, max_vertices=args.max_vertices,
                             time_limit=args.time_limit, workers=args.workers)
    rows = [c.to_dict(timing=not args.stable) for c in grid]
    columns = ["conjecture", "r", "s", "t", "candidates", "value", "status", "verdict", "nodes_explored"]
    text = "".join(
        f"{row['conjecture']} r={row['r']} s={row['s']}" + (f" t={row['t']}" if row["t"] else "")
        + f": value {row['value']} ({row['status']}), candidates {row['candidates']} -> {row['verdict']}\n"
        for row in rows
    )
    return _finish(args, rows, EXIT_OK, text, (rows, columns))


# -- parser ------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--workers", type=_positive, default=None,
                        help="worker processes (default: $TRACE_TURAN_WORKERS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized corpora")
    common.add_argument("--stable", action="store_true", help="omit wall-clock timings from reports")

    p = argparse.ArgumentParser(prog="trace-turan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("phi", parents=[common], help="dominated number of a hypergraph file")
    c.add_argument("file")
    c.add_argument("--cross-check", action="store_true", help="also compute gamma and compare")
    c.set_defaults(handler=cmd_phi)

    c = sub.add_parser("gamma", parents=[common], help="domination number of a hypergraph file")
    c.add_argument("file")
    c.set_defaults(handler=cmd_gamma)

    c = sub.add_parser("decompose", parents=[common], help="heavy/light split of the edges")
    c.add_argument("file")
    c.add_argument("--threshold", type=_positive)
    c.add_argument("--s", type=_nonneg)
    c.add_argument("--vf", type=_nonneg, help="v(F) for the graph-pair threshold")
    c.set_defaults(handler=cmd_decompose)

    c = sub.add_parser("find-trace", parents=[common], help="look for an M_k or graph trace")
    c.add_argument("file")
    c.add_argument("--matching", type=_positive, metavar="K")
    c.add_argument("--graph", metavar="FILE")
    c.add_argument("--engine", choices=ENGINES, default="pruned")
    c.set_defaults(handler=cmd_find_trace)

    def construction_flags(c: argparse.ArgumentParser, required: bool) -> None:
        if required:
            c.add_argument("kind", choices=KINDS)
        else:
            c.add_argument("--kind", choices=KINDS)
        c.add_argument("--r", type=_positive)
        c.add_argument("--s", type=_nonneg)
        c.add_argument("--t", type=_positive)
        c.add_argument("--n", type=_nonneg)
        c.add_argument("--base", metavar="FILE")

    c = sub.add_parser("construct", parents=[common], help="emit a construction as a hypergraph file")
    construction_flags(c, True)
    c.set_defaults(handler=cmd_construct)

    c = sub.add_parser("verify", parents=[common], help="check a construction or run a property suite")
    c.add_argument("file", nargs="?", help="hypergraph to check (default: build it from the flags)")
    construction_flags(c, False)
    c.add_argument("--checks", help=f"comma list from {','.join(CHECK_NAMES)}")
    c.add_argument("--suite", choices=("complement", "engines", "heavy-core", "all"))
    c.add_argument("--count", type=_positive, help="instances per randomized suite")
    c.set_defaults(handler=cmd_verify)

    c = sub.add_parser("oracle", parents=[common], help="exhaustive search for an extremal value")
    c.add_argument("task", choices=TASKS)
    c.add_argument("--r", type=_positive, required=True)
    c.add_argument("--s", type=_nonneg, required=True)
    c.add_argument("--t", type=_positive)
    c.add_argument("--n", type=_positive)
    c.add_argument("--graph", metavar="FILE")
    c.add_argument("--max-vertices", type=_positive)
    c.add_argument("--max-edges", type=_positive)
    c.add_argument("--node-limit", type=_positive)
    c.add_argument("--time-limit", type=float)
    c.set_defaults(handler=cmd_oracle)

    c = sub.add_parser("bounds-suite", parents=[common], help="classical bounds over all small graphs")
    c.add_argument("--nmax", type=_positive, default=7)
    c.add_argument("--s", type=_positive, default=4, help="largest s for the phi-based bounds")
    c.add_argument("--t", type=_positive, default=3, help="clique size for the clique bounds")
    c.set_defaults(handler=cmd_bounds_suite)

    c = sub.add_parser("conjectures", parents=[common], help="candidate families vs. the oracles")
    c.add_argument("--r", type=_positive, nargs="+", default=None)
    c.add_argument("--s-max", type=_positive, default=None)
    c.add_argument("--node-limit", type=_positive, default=2000)
    c.add_argument("--max-vertices", type=_positive)
    c.add_argument("--time-limit", type=float)
    c.set_defaults(handler=cmd_conjectures)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.workers is None:
        args.workers = default_workers()
    try:
        return args.handler(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidArgument, PreconditionViolation, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
