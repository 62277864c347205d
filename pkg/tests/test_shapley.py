from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from conftest import graphs
from vulnet.errors import DomainError
from vulnet.generators import (
    complete,
    cycle,
    fig1_bottomleft,
    fig1_bottomright,
    fig1_topright,
    path,
    petersen,
    star,
    star6,
)
from vulnet.graph_core import Graph, NodeSet, power_p
from vulnet.shapley import (
    GameOracleConfig,
    PowerVector,
    characteristic,
    core_check,
    oracle_shapley,
    shapley,
    shapley_p,
    shapley_q,
    shapley_v,
)

PERM = GameOracleConfig("permutation_exact")


def test_closed_form_examples():
    g = star6()
    assert shapley_p(g)[0] == 5
    assert shapley_v(g)[0] == -5
    assert shapley_p(fig1_bottomleft())[0] == Fraction(8, 3)
    assert shapley_p(fig1_topright())[0] == 2
    assert shapley_p(fig1_bottomright())[0] == Fraction(11, 6)


def test_q_examples():
    q = shapley_q(star6())
    assert q[0] == Fraction(13, 7)
    assert all(s == Fraction(-31, 21) for s in q.scores[1:])
    assert q.total() == -7
    assert shapley_q(complete(2)).scores == (-1, -1)
    assert shapley_q(cycle(4)).scores == (-1,) * 4


def test_v_examples():
    assert shapley_v(complete(2)).scores == (0, 0)
    single = Graph.from_edges([], n=1)
    assert shapley_p(single).scores == (-1,)
    assert shapley_v(single).scores == (1,)


def test_oracle_examples():
    s4 = star(4)
    assert oracle_shapley(s4, "p")[0] == 3 == shapley_p(s4)[0]
    assert oracle_shapley(cycle(4), "q").scores == (-1,) * 4
    assert oracle_shapley(complete(3), "p").scores == (0, 0, 0)


def test_oracle_refuses_large_graphs():
    with pytest.raises(DomainError):
        oracle_shapley(cycle(11), "p")
    with pytest.raises(DomainError):
        oracle_shapley(cycle(9), "p", PERM)
    with pytest.raises(DomainError):
        shapley(cycle(4), "z")


def test_oracle_modes_agree_on_fixtures():
    for g in (star6(), fig1_bottomleft(), fig1_topright(), path(6), cycle(7)):
        for m in "pqv":
            assert oracle_shapley(g, m) == oracle_shapley(g, m, PERM) == shapley(g, m)


def test_regular_graphs_have_flat_scores():
    for g in (cycle(7), complete(6), petersen()):
        assert set(shapley_p(g).scores) == {0}
        assert set(shapley_q(g).scores) == {-1}


def test_core_examples():
    g = star6()
    pv = shapley_p(g)
    leaves = g.nodeset(range(1, 7))
    assert sum(pv[i] for i in leaves) == -5 == power_p(g, leaves)
    rep = core_check(g, pv)
    assert rep.ok and rep.tight > 0 and rep.min_slack == 0
    c4 = cycle(4)
    rep = core_check(c4, shapley_v(c4))
    assert rep.ok and rep.checked == 15
    with pytest.raises(DomainError):
        core_check(c4, shapley_q(c4))


def test_core_check_reports_violations():
    g = star6()
    fake = PowerVector("p", (Fraction(0),) * g.n)
    rep = core_check(g, fake)
    assert not rep.ok
    t, total, value = rep.violations[0]
    assert total < value == characteristic(g, "p", t)


def test_core_sampling_mode_is_seeded():
    g = fig1_bottomright()
    a = core_check(g, shapley_p(g), samples=500, seed=3, exhaustive=False)
    b = core_check(g, shapley_p(g), samples=500, seed=3, exhaustive=False)
    assert (a.checked, a.tight, a.min_slack) == (b.checked, b.tight, b.min_slack)
    assert a.ok


def test_isolated_nodes_break_core_membership():
    # an isolated node lies in B(T) for every T, so p(empty) = 1 while phi^p = -1
    g = Graph.from_edges([(0, 1)], n=3)
    assert shapley_p(g)[2] == -1
    assert power_p(g, g.nodeset([2])) == 0
    assert not core_check(g, shapley_p(g)).ok


# -- properties ----------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(graphs(min_n=1, max_n=10))
def test_closed_forms_match_subset_oracle(g):
    for m in "pqv":
        assert shapley(g, m) == oracle_shapley(g, m)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_permutation_oracle_agrees(g):
    for m in "pq":
        assert oracle_shapley(g, m, PERM) == oracle_shapley(g, m)


@given(graphs(min_n=1, max_n=60))
def test_efficiency_and_symmetry(g):
    iso = sum(1 for d in g.degrees if d == 0)
    p, q, v = shapley_p(g), shapley_q(g), shapley_v(g)
    # the games take value (#isolated) on the empty coalition
    assert p.total() == -iso
    assert q.total() == -g.n - iso
    assert v.total() == iso
    assert all(a == -b for a, b in zip(p.scores, v.scores))
    if iso == 0:
        assert p.total() == 0 and q.total() == -g.n


@given(graphs(min_n=2, max_n=40))
def test_singleton_core_condition(g):
    # isolated nodes give the empty coalition positive worth, see below
    assume(min(g.degrees) > 0)
    p = shapley_p(g)
    for i in range(g.n):
        assert p[i] >= power_p(g, NodeSet.of(g.n, [i]))


@given(graphs(min_n=2, max_n=30))
def test_p_score_depends_on_neighbour_degree_multiset(g):
    p = shapley_p(g)
    key = {}
    for i in range(g.n):
        sig = tuple(sorted(g.degree(j) for j in g.adj[i]))
        assert key.setdefault(sig, p[i]) == p[i]


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=9))
def test_core_membership_exhaustive(g):
    assume(min(g.degrees) > 0)
    for pv in (shapley_p(g), shapley_v(g)):
        assert core_check(g, pv).ok
