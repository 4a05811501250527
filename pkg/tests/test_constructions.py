from __future__ import annotations

from math import comb

import pytest

from trace_turan.canon import is_isomorphic
from trace_turan.constructions import (
    ConstructionSpec,
    build,
    conjecture1_candidates,
    conjecture2_candidate,
    cover_removed_graph,
    min_covering_removal,
    predicted_counts,
    thm2_construction,
    thm3_construction,
    thm4_construction,
    thm5_construction,
    thm6_construction,
)
from trace_turan.domination import phi
from trace_turan.hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    complete_graph,
    complete_hypergraph,
    count_hypercliques,
    cycle_graph,
    matching_graph,
    path_graph,
    star_graph,
    subsets_of_size,
)
from trace_turan.oracles import SearchBudget, oracle_h
from trace_turan.trace import contains_graph_trace, contains_matching_trace, forbidden_pattern_free

K3, P4, M2 = complete_graph(3), path_graph(4), matching_graph(2)


# -- thm2 / thm6 cones -------------------------------------------------------

def test_thm2_examples():
    H = thm2_construction(Graph(2, ((0, 1),)), 6)
    assert H.edge_tuples() == [(0, 1, v) for v in range(2, 6)]
    assert thm2_construction(cycle_graph(4), 10).m == 24
    assert thm2_construction(cycle_graph(4), 4).m == 0


def test_cone_argument_errors():
    with pytest.raises(InvalidArgument):
        thm2_construction(cycle_graph(4), 3)
    with pytest.raises(InvalidArgument):
        thm2_construction(Hypergraph(4, ((0, 1), (1, 2, 3))), 6)
    with pytest.raises(InvalidArgument):
        thm2_construction(Graph(4, ((0, 1),)), 6)


def test_thm6_examples():
    assert thm6_construction(star_graph(3), 8).m == 12
    assert thm6_construction(Graph(2, ((0, 1),)), 5).m == 3
    assert thm6_construction(Graph(0, ()), 5).m == 0


# -- thm3 --------------------------------------------------------------------

@pytest.mark.parametrize("s, n, edges", [(1, 10, 8), (2, 10, 28), (3, 9, 38)])
def test_thm3_edge_counts(s, n, edges):
    H = thm3_construction(s, n)
    assert H.m == edges == predicted_counts(ConstructionSpec("thm3", s=s, n=n)).edges


def test_thm3_layout():
    H = thm3_construction(2, 6)
    interior = [e for e in H.edges if e < 1 << 4]
    assert len(interior) == comb(4, 3)
    base = cover_removed_graph(4)
    assert is_isomorphic(base, cycle_graph(4))
    with pytest.raises(InvalidArgument):
        thm3_construction(2, 3)


def test_cover_removed_graph_sizes():
    for m in range(2, 9):
        G = cover_removed_graph(m)
        assert G.m == comb(m, 2) - (m - m // 2)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_thm3_trace_free_and_counted(s):
    for n in range(s + 3, 16):
        H = thm3_construction(s, n)
        assert contains_matching_trace(H, s + 1) is None
        assert H.m == (s * (s + 2) // 2) * (n - s - 2) + comb(s + 2, 3)


# -- thm4 / thm5 -------------------------------------------------------------

def test_thm4_example():
    H = thm4_construction(3, 3, 4, 8)
    assert H.m == 24 + 4
    pred = predicted_counts(ConstructionSpec("thm4", r=3, s=3, t=4, n=8))
    assert pred.edges == H.m
    assert pred.cliques_t == count_hypercliques(H, 4) == 17


def test_thm4_small_cases():
    H = thm4_construction(3, 2, 4, 7)
    base = {e for e in H.edges if e < 1 << 3}
    assert base == {0b111}
    assert thm4_construction(3, 3, 4, 4).m == 4
    with pytest.raises(InvalidArgument):
        thm4_construction(3, 3, 3, 8)
    with pytest.raises(InvalidArgument):
        thm4_construction(2, 3, 3, 8)
    with pytest.raises(InvalidArgument):
        thm4_construction(3, 2, 5, 8)


def test_thm5_examples():
    H = thm5_construction(4, 10)
    assert H.m == 60
    assert count_hypercliques(H, 4) == 55
    pred = predicted_counts(ConstructionSpec("thm5", s=4, t=4, n=10))
    assert (pred.edges, pred.cliques_t) == (60, 55)
    assert thm5_construction(5, 6).m == 20
    with pytest.raises(InvalidArgument):
        thm5_construction(2, 8)


def test_thm4_thm5_matching_trace_free():
    for s in range(1, 5):
        for t in range(4, s + 3):
            for n in range(s + 1, 13):
                H = thm4_construction(3, s, t, n)
                assert contains_matching_trace(H, s + 1) is None, (s, t, n)
    for s in (3, 4):
        for n in range(s + 1, 13):
            assert contains_matching_trace(thm5_construction(s, n), s + 1) is None


def test_predicted_cliques_match_counter():
    for s in range(1, 5):
        for t in range(4, s + 3):
            for n in (s + 2, s + 5, 11):
                spec = ConstructionSpec("thm4", r=3, s=s, t=t, n=n)
                assert predicted_counts(spec).cliques_t == count_hypercliques(build(spec), t)
    for s in (4, 5):
        for t in range(4, s + 1):
            spec = ConstructionSpec("thm5", s=s, t=t, n=11)
            assert predicted_counts(spec).cliques_t == count_hypercliques(build(spec), t)


# -- cones with graph pattern bases ------------------------------------------

def _h_bases(F: Graph, s_max: int = 3):
    for s in range(1, s_max + 1):
        rep = oracle_h(2, s, F, SearchBudget(node_limit=5000))
        if rep.value:
            yield s, rep.witness


@pytest.mark.parametrize("F", [K3, P4, M2], ids=["K3", "P4", "M2"])
def test_thm6_cones_avoid_both_traces(F):
    checked = 0
    for s, base in _h_bases(F):
        assert phi(base) <= s and forbidden_pattern_free(base, F)
        for n in range(base.n + 1, 13):
            H = thm6_construction(base, n)
            assert H.m == base.m * (n - base.n)
            assert contains_matching_trace(H, s + 1) is None
            assert contains_graph_trace(H, F) is None
            checked += 1
    assert checked > 0


def test_thm2_cones_trace_free():
    for m in (3, 4, 5):
        base = cover_removed_graph(m).drop_isolated()
        s = phi(base)
        for n in range(base.n + 1, 16):
            assert contains_matching_trace(thm2_construction(base, n), s + 1) is None


def test_small_n_flag():
    assert "small-n" in predicted_counts(ConstructionSpec("thm3", s=2, n=10)).flags
    assert "small-n" not in predicted_counts(ConstructionSpec("thm3", s=1, n=12)).flags


# -- conjecture candidates ---------------------------------------------------

def test_covering_removal_examples():
    assert len(min_covering_removal(4, 3)) == 3
    assert len(min_covering_removal(5, 3)) == 4
    sts = min_covering_removal(7, 3)
    assert len(sts) == comb(7, 2) // 3
    pairs = [p for e in sts for p in subsets_of_size(e, 2)]
    assert len(pairs) == len(set(pairs)) == comb(7, 2)


def test_covering_removal_covers_everything():
    for m, r in [(4, 3), (5, 3), (6, 3), (5, 4), (4, 2), (7, 2)]:
        removed = min_covering_removal(m, r)
        covered = {p for e in removed for p in subsets_of_size(e, r - 1)}
        assert covered == set(subsets_of_size((1 << m) - 1, r - 1))


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_conjecture1_candidates(r, s):
    A, B = conjecture1_candidates(r, s)
    assert A.m == comb(s + r - 1, r)
    assert is_isomorphic(A, complete_hypergraph(s + r - 1, r))
    assert phi(A) <= s and phi(B) <= s
    if r == 2:
        assert B.m == s * (s + 2) // 2
        assert B.m >= A.m


def test_conjecture1_r3_values():
    # frozen from the exact covering search: removed sets of size 3, 4, 4 and 7
    expected = {1: (1, 1), 2: (4, 6), 3: (10, 14), 4: (20, 28)}
    for s, (a, b) in expected.items():
        A, B = conjecture1_candidates(3, s)
        assert (A.m, B.m) == (a, b)


def test_conjecture2_candidate():
    assert conjecture2_candidate(3, 2) == complete_hypergraph(4, 3)
    assert is_isomorphic(conjecture2_candidate(2, 3), complete_graph(4))
    for r in (2, 3):
        for s in (1, 2, 3):
            assert phi(conjecture2_candidate(r, s)) <= s


def test_build_requires_parameters():
    with pytest.raises(InvalidArgument):
        build(ConstructionSpec("thm3", s=2))
    with pytest.raises(InvalidArgument):
        build(ConstructionSpec("thm2", n=5))
    with pytest.raises(InvalidArgument):
        build(ConstructionSpec("thm7", s=1, n=5))
