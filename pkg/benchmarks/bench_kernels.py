"""Time the numba kernels against their numpy fallbacks on the same inputs.

    python3 benchmarks/bench_kernels.py --repeat 5

Both backends are imported directly, so ``TRACE_TURAN_DISABLE_JIT`` does not
matter here.  The first numba call (compilation or cache load) is excluded.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from trace_turan import _kernels_nb, _kernels_np
from trace_turan.constructions import thm3_construction
from trace_turan.oracles import scan_inputs
from trace_turan.suites import random_hypergraph


def cases(seed: int):
    rng = random.Random(seed)
    sparse = random_hypergraph(rng, 18, 3, 0.02)
    dense = random_hypergraph(rng, 14, 3, 0.3)
    edges_sparse = np.array(sparse.edges, dtype=np.int64)
    edges_dense = np.array(dense.edges, dtype=np.int64)
    thm3 = thm3_construction(3, 13)
    edges_thm3 = np.array(thm3.edges, dtype=np.int64)
    _, pb, fam, tables = scan_inputs(3, 6, 2, None)
    return [
        ("dominated 4-set, sparse n=18", "first_dominated_subset", (edges_sparse, 18, 4)),
        ("dominated 6-set, dense n=14", "first_dominated_subset", (edges_dense, 14, 6)),
        ("M_4 trace scan, thm3 s=3 n=13", "first_matching_trace_set", (edges_thm3, 13, 4)),
        ("M_3 trace scan, dense n=14", "first_matching_trace_set", (edges_dense, 14, 3)),
        ("labeled scan 2^20, r=3 n=6", "labeled_scan", (pb, fam, tables, 12)),
    ]


def best_of(fn, args, repeat: int) -> tuple[float, object]:
    out = None
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)

    print(f"{'case':34s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}  agree")
    for label, name, call_args in cases(args.seed):
        nb, npf = getattr(_kernels_nb, name), getattr(_kernels_np, name)
        nb(*call_args)  # warm-up / compile
        t_nb, r_nb = best_of(nb, call_args, args.repeat)
        t_np, r_np = best_of(npf, call_args, args.repeat)
        same = tuple(np.atleast_1d(r_nb)) == tuple(np.atleast_1d(r_np)) if name != "labeled_scan" else \
            tuple(int(x) for x in r_nb) == tuple(int(x) for x in r_np)
        print(f"{label:34s} {t_nb * 1e3:10.2f} {t_np * 1e3:10.2f} {t_np / max(t_nb, 1e-9):8.1f}x  {same}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
