from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gr, hg, hypergraphs
from trace_turan.constructions import thm6_construction
from trace_turan.hypergraph import (
    Graph,
    Hypergraph,
    InvalidArgument,
    bits,
    complete_graph,
    complete_hypergraph,
    empty_graph,
    exact_pair_graph,
    matching_graph,
    path_graph,
    spanning_embeds,
    star_graph,
    vset,
)
from trace_turan.suites import random_hypergraph
from trace_turan.trace import (
    contains_graph_trace,
    contains_matching_trace,
    delete_vertices,
    dominated_copy_exists,
    forbidden_pattern,
    forbidden_pattern_free,
    independent_sets,
)


# -- matching traces ---------------------------------------------------------

def test_matching_trace_examples():
    H = hg(5, (0, 1, 2), (0, 3, 4))
    for engine in ("pruned", "reference"):
        core = contains_matching_trace(H, 2, engine)
        assert core.pairs == ((1, 2), (3, 4)) and core.verify(H)
        assert contains_matching_trace(complete_hypergraph(4, 3), 2, engine) is None
        assert contains_matching_trace(hg(4, (1, 2, 3)), 1, engine) is not None


def test_matching_trace_bad_arguments():
    with pytest.raises(InvalidArgument):
        contains_matching_trace(hg(3, (0, 1, 2)), 0)
    with pytest.raises(InvalidArgument):
        contains_matching_trace(hg(3, (0, 1, 2)), 1, engine="fast")


def test_core_serialization():
    H = hg(5, (0, 1, 2), (0, 3, 4))
    core = contains_matching_trace(H, 2)
    assert core.to_dict(H) == {"pairs": [[1, 2], [3, 4]], "witnesses": [[0, 1, 2], [0, 3, 4]]}


def test_engines_agree_on_random_instances():
    rng = random.Random(77)
    for _ in range(300):
        r = rng.choice((2, 3, 4))
        H = random_hypergraph(rng, rng.randint(r, 9), r)
        k = rng.randint(1, 3)
        a = contains_matching_trace(H, k, "pruned")
        b = contains_matching_trace(H, k, "reference")
        assert (a is None) == (b is None)
        if a is not None:
            assert a.verify(H) and b.verify(H)


@given(hypergraphs(max_n=8, rs=(3,)), st.integers(1, 3), st.data())
def test_matching_trace_presence_is_monotone(H, k, data):
    if contains_matching_trace(H, k) is None:
        return
    extra = data.draw(st.lists(st.sampled_from(list(itertools.combinations(range(H.n), 3))), max_size=4))
    G = H
    for e in extra:
        G = G.add_edge(e)
        assert contains_matching_trace(G, k) is not None


# -- graph traces ------------------------------------------------------------

def test_graph_trace_examples():
    got = contains_graph_trace(complete_hypergraph(4, 3), complete_graph(3))
    assert got is not None and got[0] == vset((0, 1, 2))
    base = star_graph(3)
    assert contains_graph_trace(thm6_construction(base, 8), complete_graph(3)) is None


def test_graph_trace_witness_is_valid():
    rng = random.Random(12)
    for _ in range(200):
        H = random_hypergraph(rng, rng.randint(3, 8), 3)
        F = Graph(4, tuple(e for e in itertools.combinations(range(4), 2) if rng.random() < 0.4))
        got = contains_graph_trace(H, F)
        if got is None:
            continue
        S, lam = got
        P = exact_pair_graph(H, S)
        assert set(lam) <= set(bits(S)) and len(set(lam)) == F.n
        assert all(P.adjacent(lam[u], lam[v]) for u, v in F.edge_tuples())


def test_graph_trace_of_matching_agrees_with_matching_engine():
    rng = random.Random(31)
    for _ in range(300):
        H = random_hypergraph(rng, rng.randint(3, 8), rng.choice((2, 3)))
        k = rng.randint(1, 3)
        if 2 * k > H.n:
            continue
        assert (contains_graph_trace(H, matching_graph(k)) is None) == (contains_matching_trace(H, k) is None)


def test_graph_trace_isolated_pattern_vertices():
    H = hg(5, (0, 1, 2))
    F = Graph(4, ((0, 1),))
    assert contains_graph_trace(H, F) is not None
    assert contains_graph_trace(hg(3, (0, 1, 2)), empty_graph(3)) is not None


@given(hypergraphs(max_n=7, rs=(3,)), st.data())
def test_graph_trace_presence_is_monotone(H, data):
    F = path_graph(3)
    if H.n < 3 or contains_graph_trace(H, F) is None:
        return
    e = data.draw(st.sampled_from(list(itertools.combinations(range(H.n), 3))))
    assert contains_graph_trace(H.add_edge(e), F) is not None


# -- dominated copies --------------------------------------------------------

def test_dominated_copy_examples():
    K2 = complete_graph(2)
    copy = dominated_copy_exists(path_graph(4), K2, {0, 1})
    assert copy is not None and copy.image == vset((1, 2))
    assert dominated_copy_exists(path_graph(3), K2, {0, 1}) is None
    assert dominated_copy_exists(gr(3, (1, 2)), K2, set()) is not None
    assert dominated_copy_exists(empty_graph(3), K2, set()) is None


def _brute_dominated_copy(G: Hypergraph, F: Graph, W: int) -> bool:
    for tau in itertools.permutations(range(G.n), F.n):
        S = vset(tau)
        if not all(any(e & S == vset((tau[u], tau[v])) for e in G.edges) for u, v in F.edge_tuples()):
            continue
        if all(any(e & S == 1 << tau[w] for e in G.edges) for w in bits(W)):
            return True
    return False


def test_dominated_copy_against_direct_search():
    rng = random.Random(55)
    for _ in range(250):
        r = rng.choice((2, 3))
        G = random_hypergraph(rng, rng.randint(r, 7), r)
        nf = rng.randint(1, min(5, G.n))
        F = Graph(nf, tuple(e for e in itertools.combinations(range(nf), 2) if rng.random() < 0.4))
        W = rng.choice((0, vset(v for v in range(nf) if rng.random() < 0.5)))
        copy = dominated_copy_exists(G, F, W)
        assert (copy is not None) == _brute_dominated_copy(G, F, W)
        if copy is not None:
            S = copy.image
            for (u, v), i in zip(F.edge_tuples(), copy.pair_witnesses):
                assert G.edges[i] & S == vset((copy.mapping[u], copy.mapping[v]))
            for w, i in zip(bits(W), copy.point_witnesses):
                assert G.edges[i] & S == 1 << copy.mapping[w]


def test_empty_w_on_graphs_is_plain_subgraph_presence():
    rng = random.Random(56)
    for _ in range(200):
        n = rng.randint(2, 7)
        G = Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5))
        nf = rng.randint(2, min(5, n))
        F = Graph(nf, tuple(e for e in itertools.combinations(range(nf), 2) if rng.random() < 0.5))
        direct = any(spanning_embeds(F, G.induced(vset(S))) is not None
                     for S in itertools.combinations(range(n), nf))
        assert (dominated_copy_exists(G, F, 0) is not None) == direct


# -- forbidden patterns ------------------------------------------------------

def test_independent_sets_of_triangle_and_path():
    assert sorted(independent_sets(complete_graph(3))) == [0, 1, 2, 4]
    assert len(list(independent_sets(path_graph(4)))) == 8


def test_delete_vertices_relabels_in_order():
    Fm, keep = delete_vertices(path_graph(4), vset((1,)))
    assert keep == [0, 2, 3] and Fm.edge_tuples() == [(1, 2)]


def test_forbidden_pattern_examples():
    K3 = complete_graph(3)
    assert forbidden_pattern_free(empty_graph(4), K3)
    assert not forbidden_pattern_free(complete_graph(3), K3)
    assert forbidden_pattern(complete_graph(3), K3)[0] == 0
    assert forbidden_pattern_free(star_graph(3), K3)
