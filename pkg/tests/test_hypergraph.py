from __future__ import annotations

import itertools
import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gr, hg, hypergraphs
from trace_turan.canon import canonical_form, is_isomorphic
from trace_turan.constructions import thm3_construction, thm5_construction
from trace_turan.hypergraph import (
    BudgetExceeded,
    FormatError,
    Graph,
    Hypergraph,
    InvalidArgument,
    PreconditionViolation,
    codegree,
    complete_graph,
    complete_hypergraph,
    count_hypercliques,
    cycle_graph,
    empty_graph,
    exact_pair_graph,
    format_hypergraph,
    link,
    matching_graph,
    parse_hypergraph,
    path_graph,
    spanning_embeds,
    trace,
    two_shadow,
    vset,
)
from trace_turan.matching import max_matching, maximum_matching, min_edge_cover


def edge_sets(H):
    return {frozenset(e) for e in H.edge_tuples()}


def _nx(G: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(G.n))
    out.add_edges_from(G.edge_tuples())
    return out


# -- trace / exact pairs / shadow / link / codegree --------------------------

def test_trace_examples():
    assert edge_sets(trace(hg(3, (0, 1, 2)), {0, 1})) == {frozenset({0, 1})}
    K = complete_hypergraph(4, 3)
    got = edge_sets(trace(K, {0, 1, 2}))
    assert got == {frozenset(s) for s in [(0, 1, 2), (0, 1), (0, 2), (1, 2)]}
    assert trace(hg(5, (0, 1, 2)), {3, 4}).m == 0


def test_trace_rejects_outside_vertex():
    with pytest.raises(InvalidArgument):
        trace(hg(3, (0, 1, 2)), {3})


def test_exact_pair_graph_examples():
    H = hg(5, (0, 1, 2), (0, 3, 4))
    assert edge_sets(exact_pair_graph(H, {1, 2, 3, 4})) == {frozenset({1, 2}), frozenset({3, 4})}
    assert exact_pair_graph(complete_hypergraph(4, 3), {0, 1, 2, 3}).m == 0
    assert exact_pair_graph(hg(4), {0, 1}).m == 0


def test_two_shadow_examples():
    assert edge_sets(two_shadow(hg(3, (0, 1, 2)))) == edge_sets(complete_graph(3))
    got = edge_sets(two_shadow(hg(4, (0, 1, 2), (0, 1, 3))))
    assert got == {frozenset(p) for p in [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]}
    assert two_shadow(hg(4)).m == 0


def test_link_examples():
    assert edge_sets(link(hg(5, (0, 1, 2), (0, 3, 4)), 0)) == {frozenset({1, 2}), frozenset({3, 4})}
    assert link(hg(4, (0, 1, 2)), 3).m == 0
    assert edge_sets(link(complete_hypergraph(4, 3), 0)) == {frozenset(p) for p in [(1, 2), (1, 3), (2, 3)]}
    with pytest.raises(InvalidArgument):
        link(hg(3, (0, 1, 2)), 3)


def test_codegree_examples():
    assert codegree(hg(4, (0, 1, 2), (0, 1, 3)), {0, 1}) == 2
    assert codegree(hg(4, (0, 1, 2)), {0, 3}) == 0
    # the lex-least cover of K3 is {01, 02}, so the surviving base edge is 12
    assert codegree(thm3_construction(1, 12), {1, 2}) == 10


@given(hypergraphs(max_n=8), st.data())
def test_trace_restriction_is_idempotent(H, data):
    S = data.draw(st.sets(st.integers(0, H.n - 1)))
    T = data.draw(st.sets(st.sampled_from(sorted(S)))) if S else set()
    assert trace(trace(H, S), T) == trace(H, T)


@given(hypergraphs(max_n=8, rs=(3, 4)))
def test_shadow_contains_every_pair_of_every_edge(H):
    G = two_shadow(H)
    for e in H.edge_tuples():
        for pair in itertools.combinations(e, 2):
            assert G.contains(pair)
    if H.m:
        assert G.m >= comb(H.r, 2)


# -- matching and edge covers ------------------------------------------------

def test_matching_examples():
    assert max_matching(cycle_graph(5)) == 2
    assert max_matching(complete_graph(4)) == 2
    assert max_matching(empty_graph(5)) == 0


def test_edge_cover_examples():
    assert len(min_edge_cover(complete_graph(4))) == 2
    assert len(min_edge_cover(complete_graph(5))) == 3
    assert min_edge_cover(gr(2, (0, 1))) == [(0, 1)]
    with pytest.raises(PreconditionViolation):
        min_edge_cover(gr(3, (0, 1)))


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, tuple(e for e in itertools.combinations(range(n), 2) if rng.random() < p))


def test_matching_agrees_with_networkx():
    rng = random.Random(11)
    for _ in range(400):
        G = _random_graph(rng, rng.randint(1, 12), rng.random())
        pairs = maximum_matching(G)
        assert len({v for p in pairs for v in p}) == 2 * len(pairs)
        assert all(G.adjacent(u, v) for u, v in pairs)
        assert len(pairs) == len(nx.max_weight_matching(_nx(G), maxcardinality=True))


def _exhaustive_cover_size(G: Graph) -> int:
    edges = G.edges
    full = (1 << G.n) - 1
    for k in range(len(edges) + 1):
        for combo in itertools.combinations(edges, k):
            acc = 0
            for e in combo:
                acc |= e
            if acc == full:
                return k
    raise AssertionError("no cover")


def test_gallai_identity_against_exhaustive_cover():
    rng = random.Random(5)
    checked = 0
    while checked < 120:
        n = rng.randint(2, 10)
        G = _random_graph(rng, n, rng.uniform(0.2, 0.6))
        if G.has_isolated or G.m > 16:
            continue
        cover = min_edge_cover(G)
        assert len(cover) == n - max_matching(G) == _exhaustive_cover_size(G)
        assert vset(v for e in cover for v in e) == (1 << n) - 1
        checked += 1


# -- cliques -----------------------------------------------------------------

def test_clique_examples():
    assert count_hypercliques(complete_hypergraph(5, 3), 4) == 5
    assert count_hypercliques(complete_graph(5, n=6), 3) == 10
    assert count_hypercliques(thm5_construction(4, 10), 4) == 55
    with pytest.raises(InvalidArgument):
        count_hypercliques(complete_hypergraph(5, 3), 2)


@pytest.mark.parametrize("m", range(2, 9))
def test_complete_hypergraph_cliques(m):
    for r in range(2, m + 1):
        K = complete_hypergraph(m, r)
        for t in range(r, m + 1):
            assert count_hypercliques(K, t) == comb(m, t)


def test_graph_cliques_agree_with_networkx():
    rng = random.Random(3)
    for _ in range(100):
        G = _random_graph(rng, rng.randint(3, 9), rng.random())
        ref = _nx(G)
        by_size: dict[int, int] = {}
        for c in nx.enumerate_all_cliques(ref):
            by_size[len(c)] = by_size.get(len(c), 0) + 1
        for t in range(2, 6):
            assert count_hypercliques(G, t) == by_size.get(t, 0)


# -- embeddings --------------------------------------------------------------

def test_spanning_embeds_examples():
    lam = spanning_embeds(matching_graph(2), path_graph(4))
    assert lam is not None
    P = path_graph(4)
    assert all(P.adjacent(lam[u], lam[v]) for u, v in matching_graph(2).edge_tuples())
    assert spanning_embeds(complete_graph(3), path_graph(3)) is None
    assert spanning_embeds(empty_graph(3), path_graph(3)) == (0, 1, 2)
    with pytest.raises(InvalidArgument):
        spanning_embeds(complete_graph(3), path_graph(4))


def _brute_embeds(F: Graph, G: Graph) -> bool:
    return any(all(G.adjacent(p[u], p[v]) for u, v in F.edge_tuples())
               for p in itertools.permutations(range(G.n)))


def test_spanning_embeds_against_permutations():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(1, 6)
        F = _random_graph(rng, n, rng.uniform(0.1, 0.6))
        G = _random_graph(rng, n, rng.uniform(0.3, 0.9))
        lam = spanning_embeds(F, G)
        assert (lam is not None) == _brute_embeds(F, G)
        if lam is not None:
            assert sorted(lam) == list(range(n))
            assert all(G.adjacent(lam[u], lam[v]) for u, v in F.edge_tuples())


# -- canonical form ----------------------------------------------------------

def test_canonical_examples():
    assert canonical_form(hg(5, (0, 1, 2))) == canonical_form(hg(5, (2, 3, 4)))
    K = complete_hypergraph(4, 3)
    assert canonical_form(K) != canonical_form(Hypergraph(4, K.edges[1:], 3))
    assert canonical_form(gr(4, (0, 1), (1, 2), (2, 3), (0, 3))) == \
        canonical_form(gr(4, (0, 2), (2, 1), (1, 3), (0, 3)))


def test_canonical_limit():
    with pytest.raises(BudgetExceeded):
        canonical_form(empty_graph(13))


def test_canonical_invariance_under_permutation():
    rng = random.Random(2024)
    for _ in range(200):
        r = rng.choice((2, 3))
        n = rng.randint(r, 8)
        pool = list(itertools.combinations(range(n), r))
        H = Hypergraph(n, tuple(rng.sample(pool, rng.randint(0, min(len(pool), 12)))), r)
        key = canonical_form(H)
        for _ in range(20):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(H.relabel(perm)) == key


def test_canonical_separates_non_isomorphic_graphs():
    rng = random.Random(8)
    for _ in range(150):
        n = rng.randint(3, 7)
        A = _random_graph(rng, n, 0.5)
        B = _random_graph(rng, n, 0.5)
        assert is_isomorphic(A, B) == nx.is_isomorphic(_nx(A), _nx(B))


# -- text format -------------------------------------------------------------

@given(hypergraphs(max_n=9, rs=(2, 3, 4)))
def test_format_round_trip(H):
    assert parse_hypergraph(format_hypergraph(H, ["note"])) == H


def test_format_is_lexicographic():
    text = format_hypergraph(hg(5, (2, 3, 4), (0, 1, 4), (0, 1, 2)))
    assert text.splitlines()[1:] == ["0 1 2", "0 1 4", "2 3 4"]


def test_parse_non_uniform():
    H = parse_hypergraph("# mixed\n4 2 0\n0 1\n1 2 3\n")
    assert H.r is None and H.m == 2


@pytest.mark.parametrize("text, line, fragment", [
    ("", None, "missing header"),
    ("3 1\n0 1 2\n", 1, "header must be"),
    ("3 x 3\n", 1, "integers"),
    ("3 2 3\n0 1 2\n", None, "announces 2 edges"),
    ("3 1 3\n0 1\n", 2, "expected 3 vertices"),
    ("3 1 3\n0 2 1\n", 2, "ascending"),
    ("3 1 3\n0 1 5\n", 2, "outside"),
    ("4 2 3\n0 1 2\n0 1 2\n", 3, "duplicate"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as info:
        parse_hypergraph(text, "f.txt")
    assert fragment in str(info.value)
    if line is not None:
        assert info.value.line == line
