"""Backend dispatch for the hot bitmask loops.

numba kernels are used unless ``TRACE_TURAN_DISABLE_JIT`` is set; the numpy
versions are the fallback.  Both take edges as an int64 mask array.
"""

from __future__ import annotations

import numpy as np

from . import _kernels_np
from ._accel import KERNEL_MAX_VERTICES, USE_JIT
from .hypergraph import BudgetExceeded, Hypergraph, InvalidArgument

if USE_JIT:
    from . import _kernels_nb as _impl
else:
    _impl = _kernels_np  # type: ignore[assignment]

BACKEND = "numba" if USE_JIT else "numpy"


def edge_array(H: Hypergraph) -> np.ndarray:
    if H.n > KERNEL_MAX_VERTICES:
        raise BudgetExceeded(f"kernels handle at most {KERNEL_MAX_VERTICES} vertices, got {H.n}")
    return np.array(H.edges, dtype=np.int64)


def first_dominated_subset(H: Hypergraph, k: int) -> int:
    """Least (numeric) dominated k-set mask of ``H``, or -1."""
    return int(_impl.first_dominated_subset(edge_array(H), H.n, k))


def first_matching_trace_set(H: Hypergraph, k: int) -> int:
    """Least 2k-set mask carrying an M_k trace, or -1."""
    if k < 1:
        raise InvalidArgument("k must be positive")
    return int(_impl.first_matching_trace_set(edge_array(H), H.n, k))


def labeled_scan(pairbits: np.ndarray, fam: np.ndarray, tables: np.ndarray, lo_bits: int = 12):
    best, mask, n_best, n_good = _impl.labeled_scan(
        np.ascontiguousarray(pairbits, dtype=np.int64),
        np.ascontiguousarray(fam, dtype=np.int64),
        np.ascontiguousarray(tables, dtype=np.bool_),
        lo_bits,
    )
    return int(best), int(mask), int(n_best), int(n_good)
