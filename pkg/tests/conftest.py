from __future__ import annotations

import itertools
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from trace_turan.hypergraph import Graph, Hypergraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def hg(n: int, *edges, r: int | None = 3) -> Hypergraph:
    return Hypergraph(n, tuple(edges), r)


def gr(n: int, *edges) -> Graph:
    return Graph(n, tuple(edges))


@st.composite
def hypergraphs(draw, max_n: int = 8, rs=(2, 3), min_n: int = 1):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(max(min_n, r), max_n))
    pool = list(itertools.combinations(range(n), r))
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(len(pool), 14)))
    if r == 2:
        return Graph(n, tuple(chosen))
    return Hypergraph(n, tuple(chosen), r)


@st.composite
def graphs(draw, max_n: int = 7, min_n: int = 1):
    n = draw(st.integers(min_n, max_n))
    pool = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
    return Graph(n, tuple(chosen))


@pytest.fixture
def tmp_hg(tmp_path):
    """Write a hypergraph to a file and return its path."""
    from trace_turan.hypergraph import format_hypergraph

    def write(H: Hypergraph, name: str = "h.txt") -> str:
        path = tmp_path / name
        path.write_text(format_hypergraph(H))
        return str(path)

    return write


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
