from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablereg.errors import InputError
from stablereg.graphs import (
    Graph,
    clique_union,
    complete_graph,
    empty_graph,
    half_graph,
    matching_graph,
)
from stablereg.stability import (
    Ladder,
    find_ladder,
    find_relation_ladder,
    graph_relation,
    is_k_stable,
    ladder_exists_naive,
    ladder_exists_scan,
    ladder_index,
)
from tests.test_graphs import graphs


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for idx, (u, v) in enumerate(pairs):
            if (code >> idx) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph(n, tuple(rows))


def test_empty_has_no_ladder():
    assert find_ladder(empty_graph(5), 1) is None
    assert ladder_index(empty_graph(5), 5) == 0
    assert is_k_stable(empty_graph(5), 1)


def test_half_graph_defining_ladder():
    lad = find_ladder(half_graph(4), 4)
    assert lad == Ladder((0, 1, 2, 3), (4, 5, 6, 7))
    assert not is_k_stable(half_graph(4), 4)


def test_half_graph_index_is_exactly_its_order():
    # frozen from the exhaustive tuple-scan oracle
    assert ladder_index(half_graph(4), 6) == 4
    assert ladder_index(half_graph(2), 6) == 2  # so half_graph(2) is 3-stable


def test_matching_index():
    assert ladder_index(matching_graph(4), 4) == 1


def test_complete_graph_repeating_witnesses():
    # K_5: a length-2 ladder exists only because slots may repeat across lists
    lad = find_ladder(complete_graph(5), 2)
    assert lad is not None and lad.holds_in(graph_relation(complete_graph(5)))
    assert set(lad.vs) & set(lad.ws)
    assert find_ladder(complete_graph(5), 3) is None
    assert is_k_stable(complete_graph(5), 3)
    assert ladder_index(complete_graph(5), 5) == 2


def test_distinct_witness_variant():
    # with pairwise-distinct slots the complete graph loses its 2-ladder
    assert find_ladder(complete_graph(5), 2, distinct=True) is None
    assert ladder_index(complete_graph(5), 5, distinct=True) == 1
    lad = find_ladder(half_graph(3), 3, distinct=True)
    assert lad is not None
    assert len(set(lad.vs) | set(lad.ws)) == 6


def test_clique_union_index():
    assert ladder_index(clique_union([3, 3]), 5) == 2
    assert ladder_index(clique_union([4, 4]), 5) == 2


def test_bad_inputs():
    with pytest.raises(InputError):
        find_ladder(empty_graph(3), 0)
    with pytest.raises(InputError):
        ladder_index(empty_graph(3), 0)


def test_oracle_equivalence_small_exhaustive():
    # DFS, tuple scan and the literal product enumeration agree on all
    # graphs with at most 4 vertices for k <= 4
    for n in range(1, 5):
        for g in all_graphs(n):
            rel = graph_relation(g)
            for k in range(1, 5):
                found = find_relation_ladder(rel, k)
                exists = ladder_exists_scan(rel, k)
                naive = ladder_exists_naive(rel, k)
                assert (found is not None) == exists == naive
                if found is not None:
                    assert found.holds_in(rel)


@given(graphs(max_n=7), st.integers(min_value=1, max_value=4))
@settings(max_examples=200)
def test_oracle_equivalence_random(g, k):
    rel = graph_relation(g)
    found = find_relation_ladder(rel, k)
    assert (found is not None) == ladder_exists_scan(rel, k)
    if found is not None:
        assert found.holds_in(rel)


def test_ladder_length_cannot_exceed_vertex_count():
    # slots within one tuple are forced distinct, so k > n is impossible
    for g in (complete_graph(4), half_graph(2), matching_graph(2)):
        assert find_ladder(g, g.n + 1) is None


@given(graphs(max_n=6))
@settings(max_examples=80)
def test_distinct_matches_naive(g):
    rel = graph_relation(g)
    for k in (1, 2):
        found = find_relation_ladder(rel, k, distinct=True)
        assert (found is not None) == ladder_exists_naive(rel, k, distinct=True)


@given(graphs(max_n=7))
@settings(max_examples=80)
def test_stability_monotone(g):
    idx = ladder_index(g, g.n)
    for k in range(1, g.n + 1):
        assert is_k_stable(g, k) == (k > idx)


@given(graphs(max_n=7), st.integers(min_value=0))
@settings(max_examples=80)
def test_induced_subgraph_monotone(g, pick):
    mask = (pick % g.full_mask) + 1 if g.full_mask > 1 else 1
    sub = g.induced(mask)
    assert ladder_index(sub, sub.n) <= ladder_index(g, g.n)
