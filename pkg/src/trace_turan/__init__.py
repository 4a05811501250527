"""Exact computations for trace Turán problems on uniform hypergraphs."""

__version__ = "0.1.0"

from .hypergraph import (  # noqa: E402
    BudgetExceeded,
    FormatError,
    Graph,
    Hypergraph,
    InvalidArgument,
    PreconditionViolation,
)

__all__ = [
    "BudgetExceeded",
    "FormatError",
    "Graph",
    "Hypergraph",
    "InvalidArgument",
    "PreconditionViolation",
    "__version__",
]
