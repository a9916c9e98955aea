from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stablereg.errors import CapacityError, InputError
from stablereg.graphs import (
    Graph,
    clique_union,
    complete_graph,
    empty_graph,
    from_edges,
    half_graph,
    mask_of,
)
from stablereg.pairs import (
    excellence_report,
    good_set_violation,
    homogeneity,
    is_almost_good,
    is_excellent,
    is_good_pair,
    is_good_set,
    is_homogeneous,
    is_special,
    special_witness,
    threshold_sets,
)
from tests.test_graphs import graphs

F = Fraction


def complete_bipartite(a, b):
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for idx, (u, v) in enumerate(pairs):
            if (code >> idx) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# goodness


def test_good_set_examples():
    g = empty_graph(6)
    assert is_good_set(g, g.full_mask, F(1, 100))

    hg4 = half_graph(4)
    a_side = mask_of(range(4))
    assert not is_good_set(hg4, a_side, F(1, 4))
    # b_2 (vertex 5) is a mid-band parameter: it sees exactly half of the a-side
    assert (hg4.adj[5] & a_side).bit_count() * 2 == a_side.bit_count()

    cu = clique_union([5, 5])
    cls = mask_of(range(5))
    assert is_good_set(cu, cls, F(2, 5))  # type class at eps = 2/s


def test_good_set_errors():
    g = empty_graph(3)
    with pytest.raises(InputError):
        is_good_set(g, 0, F(1, 2))
    with pytest.raises(InputError):
        is_good_set(g, g.full_mask, F(0))


def test_good_set_violation_names_parameter():
    hg4 = half_graph(4)
    b = good_set_violation(hg4, mask_of(range(4)), F(1, 4))
    assert b is not None
    count = (hg4.adj[b] & mask_of(range(4))).bit_count()
    assert F(1, 4) * 4 <= count <= F(3, 4) * 4


def test_threshold_sets_examples():
    g = empty_graph(6)
    X, Y = mask_of(range(3)), mask_of(range(3, 6))
    assert threshold_sets(g, X, Y, F(1, 2), F(1, 2)) == (X, 0)

    cb = complete_bipartite(3, 3)
    assert threshold_sets(cb, X, Y, F(1, 2), F(1, 2)) == (0, Y)

    hg4 = half_graph(4)
    a_side, b_side = mask_of(range(4)), mask_of(range(4, 8))
    X0, Y1 = threshold_sets(hg4, a_side, b_side, F(1, 2), F(1, 2))
    assert X0 == mask_of([3])  # a_4 alone: |E(a_i, Y)| = 5 - i
    assert Y1 == mask_of([6, 7])  # b_3, b_4: |E(X, b_j)| = j


# ---------------------------------------------------------------------------
# homogeneity / speciality / pair goodness


def test_pair_examples():
    cb = complete_bipartite(3, 3)
    X, Y = mask_of(range(3)), mask_of(range(3, 6))
    v = homogeneity(cb, X, Y, F(1, 4))
    assert v.kind == "homogeneous-high" and v.density == 1
    w = special_witness(cb, X, Y, F(1, 4))
    assert w is not None and w.side == "high" and w.Xp == X and w.Yp == Y
    assert is_good_pair(cb, X, Y, F(1, 4))
    assert is_almost_good(cb, X, Y, F(1, 4))

    g = empty_graph(6)
    v = homogeneity(g, X, Y, F(1, 4))
    assert v.kind == "homogeneous-low" and v.density == 0
    assert is_special(g, X, Y, F(1, 4))
    assert is_good_pair(g, X, Y, F(1, 4))

    hg4 = half_graph(4)
    a_side, b_side = mask_of(range(4)), mask_of(range(4, 8))
    v = homogeneity(hg4, a_side, b_side, F(1, 4))
    assert v.kind == "not-homogeneous" and v.density == F(5, 8)


def test_special_implies_almost_good_small():
    for g in all_graphs(4):
        for X in range(1, 16):
            for Y in range(1, 16):
                if is_special(g, X, Y, F(1, 4)):
                    assert is_almost_good(g, X, Y, F(1, 4))


def test_almost_good_largeness_parameter():
    # one bad row out of five is tolerated at largeness 1/3 but not at 1/5
    edges = [(0, 5), (0, 6)]
    edges += [(i, 5 + j) for i in range(1, 5) for j in range(8)]
    g = from_edges(13, edges)
    X, Y = mask_of(range(5)), mask_of(range(5, 13))
    eps = F(1, 4)
    assert not is_good_pair(g, X, Y, eps)  # row 0 sits at exactly 1/4 of Y
    assert is_almost_good(g, X, Y, eps, largeness=F(1, 3))
    assert not is_almost_good(g, X, Y, eps, largeness=F(1, 5))


# ---------------------------------------------------------------------------
# threshold-set dichotomy (single frozen instance plus random sweep)


def _prop31_holds(g, X, Y, alpha, beta, delta, eps):
    X0, Y1 = threshold_sets(g, X, Y, delta, eps)
    if F(Y1.bit_count(), Y.bit_count()) < alpha:
        return True  # hypothesis fails, nothing to check
    if delta * (1 - beta) > alpha * (beta - eps):
        return True
    c = F(X0.bit_count(), X.bit_count())
    return c < beta or c > 1 - beta


@given(graphs(max_n=8), st.data())
@settings(max_examples=200)
def test_threshold_dichotomy_random(g, data):
    X = data.draw(st.integers(min_value=1, max_value=g.full_mask))
    Y = data.draw(st.integers(min_value=1, max_value=g.full_mask))
    fracs = [F(a, b) for b in range(2, 7) for a in range(1, b)]
    beta = data.draw(st.sampled_from(fracs))
    eps = data.draw(st.sampled_from([f for f in fracs] ))
    alpha = data.draw(st.sampled_from(fracs))
    delta = data.draw(st.sampled_from(fracs))
    assert _prop31_holds(g, X, Y, alpha, beta, delta, eps)


# ---------------------------------------------------------------------------
# symmetry lemma, exhaustively on all graphs with at most 6 vertices


@pytest.mark.parametrize("eps", [F(1, 2), F(1, 3), F(1, 4)])
def test_symmetry_lemma_exhaustive(eps):
    gamma = eps * eps / 4
    for n in range(1, 7):
        for g in all_graphs(n):
            full = g.full_mask
            good = [X for X in range(1, full + 1) if is_good_set(g, X, gamma)]
            for X in good:
                for Y in good:
                    assert is_homogeneous(g, X, Y, eps), (g, X, Y, eps)


def test_nested_subset_goodness_scaling():
    # Y <= X with |Y| = alpha |X| inherits goodness at eps / alpha
    g = clique_union([6, 4])
    X = mask_of(range(6))
    eps = F(1, 5)
    assert is_good_set(g, X, eps)
    Y = mask_of(range(3))
    alpha = F(3, 6)
    assert is_good_set(g, Y, eps / alpha)


@given(graphs(max_n=8), st.data())
@settings(max_examples=150)
def test_nested_subset_goodness_random(g, data):
    X = data.draw(st.integers(min_value=1, max_value=g.full_mask))
    sub = data.draw(st.integers(min_value=1, max_value=X)) & X
    if sub == 0:
        sub = X & -X
    eps = data.draw(st.sampled_from([F(1, 3), F(1, 4), F(2, 5)]))
    if is_good_set(g, X, eps):
        alpha = F(sub.bit_count(), X.bit_count())
        assert is_good_set(g, sub, eps / alpha)


# ---------------------------------------------------------------------------
# excellence


def test_excellence_examples():
    g = empty_graph(5)
    assert is_excellent(g, g.full_mask, F(1, 3), F(1, 7))

    hg4 = half_graph(4)
    assert not is_excellent(hg4, mask_of(range(4)), F(1, 4), F(1, 4))

    cu = clique_union([4, 4])
    cls = mask_of(range(4))
    assert is_good_set(cu, cls, F(2, 4))
    assert is_excellent(cu, cls, 3 * F(2, 4), F(2, 4))


def test_excellence_capacity():
    g = empty_graph(15)
    with pytest.raises(CapacityError):
        is_excellent(g, g.full_mask, F(1, 3), F(1, 3))
    # a candidate list sidesteps the bound
    rep = excellence_report(g, g.full_mask, F(1, 3), F(1, 3), candidates=[1, 3])
    assert rep.value and rep.mode == "candidates"


@pytest.mark.parametrize("delta", [F(1, 8), F(1, 4), F(2, 5)])
def test_excellence_remark(delta):
    # an eps-good set (eps < 1/2) is ((eps + 2d)/(1 + 2d), d)-excellent
    for g in [clique_union([4, 3]), complete_graph(6), half_graph(3), empty_graph(6)]:
        for eps in (F(1, 4), F(1, 3)):
            target = (eps + 2 * delta) / (1 + 2 * delta)
            for X in range(1, g.full_mask + 1):
                if is_good_set(g, X, eps):
                    assert is_excellent(g, X, target, delta), (g, X, eps, delta)
