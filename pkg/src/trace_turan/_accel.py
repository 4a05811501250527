"""JIT switch for the bitmask kernels.

Set ``TRACE_TURAN_DISABLE_JIT=1`` to route every kernel through the pure
numpy implementations instead of numba.
"""

import os

_FLAG = os.getenv("TRACE_TURAN_DISABLE_JIT", "").strip().lower()
JIT_REQUESTED = _FLAG not in ("1", "true", "yes", "on")

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency
    HAS_NUMBA = False

USE_JIT = JIT_REQUESTED and HAS_NUMBA

NUMBA_OPTS = {"cache": True, "nogil": True}

# int64 kernels keep the sign bit clear
KERNEL_MAX_VERTICES = 62
