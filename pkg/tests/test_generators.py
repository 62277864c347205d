import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vulnet.errors import DomainError
from vulnet.generators import (
    FIXTURE_NAMES,
    GREYS,
    WHITES,
    RngSeed,
    barabasi_albert,
    bottomright_wiring,
    erdos_renyi,
    fig1_bottomleft,
    fig1_bottomright,
    fig1_topright,
    fixtures,
    random_regular,
    star6,
)
from vulnet.graph_core import is_connected, is_independent, neighbors_of_set, vulnerability_of_set
from vulnet.shapley import shapley_p
from vulnet.vulnerability import network_vulnerability, oracle_nu_bar

seeds = st.integers(0, 2**64 - 1)


def same(a, b):
    return a.adj == b.adj and a.labels == b.labels


def test_er_examples():
    g = erdos_renyi(2, 1.0, seed=0)
    assert g.n == 2 and list(g.edges()) == [(0, 1)]
    assert erdos_renyi(100, 0.0, seed=0).m == 0
    g = erdos_renyi(100, mean_degree=5, seed=12345)
    sigma = math.sqrt(4950 * (5 / 99) * (1 - 5 / 99))
    assert abs(g.m - 247.5) <= 5 * sigma


def test_er_domain_errors():
    with pytest.raises(DomainError):
        erdos_renyi(10, 1.5, seed=0)
    with pytest.raises(DomainError):
        erdos_renyi(10, seed=0)
    with pytest.raises(DomainError):
        erdos_renyi(10, 0.5, mean_degree=3, seed=0)
    with pytest.raises(DomainError):
        erdos_renyi(10, mean_degree=20, seed=0)


def test_ba_examples():
    assert list(barabasi_albert(2, 1, seed=1).edges()) == [(0, 1)]
    tree = barabasi_albert(10, 1, seed=1)
    assert tree.m == 9 and is_connected(tree)
    assert barabasi_albert(100, 3, seed=7).m == 3 * 97 + 1 + 2
    for bad in (0, 6):
        with pytest.raises(DomainError):
            barabasi_albert(10, bad, seed=0)


def test_seed_validation():
    with pytest.raises(DomainError):
        RngSeed(-1)
    with pytest.raises(DomainError):
        RngSeed(0, 2**64)


@given(seeds, st.integers(0, 1000))
def test_generators_are_deterministic(seed, stream):
    a = erdos_renyi(40, 0.1, seed=seed, stream=stream)
    b = erdos_renyi(40, 0.1, seed=RngSeed(seed, stream))
    assert same(a, b)
    assert same(barabasi_albert(30, 2, seed=seed, stream=stream), barabasi_albert(30, 2, seed=seed, stream=stream))


def test_streams_differ():
    graphs = {tuple(erdos_renyi(30, 0.2, seed=5, stream=s).edges()) for s in range(10)}
    assert len(graphs) == 10


def test_ba_attachment_favours_high_degree():
    # node 0 collects far more than a uniform share of edges under m=1 growth
    counts = [barabasi_albert(200, 1, seed=s).degree(0) for s in range(40)]
    assert sum(counts) / len(counts) > 2 * math.log(200)


@given(seeds, st.sampled_from([(10, 3), (12, 4), (24, 5), (9, 2), (7, 0)]))
def test_random_regular(seed, nd):
    n, d = nd
    g = random_regular(n, d, seed=seed)
    assert g.n == n and set(g.degrees) == {d}


def test_random_regular_domain():
    with pytest.raises(DomainError):
        random_regular(5, 3, seed=0)
    with pytest.raises(DomainError):
        random_regular(4, 4, seed=0)


# -- fixtures ------------------------------------------------------------------

def whites(g):
    return g.nodeset_by_label(WHITES)


def test_fixture_anchors():
    g = star6()
    leaves = g.nodeset_by_label([f"l{k}" for k in range(1, 7)])
    assert oracle_nu_bar(g).nu_bar == 5 == network_vulnerability(g)[1].nu_bar
    assert vulnerability_of_set(g, leaves) == 5
    assert shapley_p(g)[g.index("c")] == 5

    tr = fig1_topright()
    assert vulnerability_of_set(tr, whites(tr)) == -1
    assert not is_independent(tr, whites(tr))
    assert shapley_p(tr)[tr.index("b")] == 2

    bl = fig1_bottomleft()
    assert sorted(bl.degree(bl.index(w)) for w in WHITES) == [1, 1, 2, 2, 3, 3]
    assert shapley_p(bl)[bl.index("b")] == Fraction(8, 3)

    br = fig1_bottomright()
    assert is_independent(br, whites(br))
    assert vulnerability_of_set(br, whites(br)) == 0
    assert len(neighbors_of_set(br, whites(br))) == 6
    assert shapley_p(br)[br.index("b")] == Fraction(11, 6)


def _admissible_wirings():
    # each white gets one or two greys, exactly one white gets two, all greys used
    for double in range(6):
        for pair in itertools.combinations(range(5), 2):
            for singles in itertools.product(range(5), repeat=5):
                pick = [(g,) for g in singles]
                pick.insert(double, pair)
                if set().union(*pick) == set(range(5)):
                    yield sorted((w, g) for w, gs in enumerate(pick) for g in gs)


def test_bottomright_wiring_is_smallest_admissible():
    assert bottomright_wiring() == min(_admissible_wirings())
    br = fig1_bottomright()
    b_nbrs = br.adj[br.index("b")]
    assert sorted(br.degree(j) for j in b_nbrs) == [2, 2, 2, 2, 2, 3]
    greys = br.nodeset_by_label(GREYS)
    assert all(set(br.adj[i]) <= set(whites(br)) for i in greys)


def test_fixture_lookup():
    assert same(fixtures("star6"), star6())
    assert same(fixtures("cycle(5)"), fixtures("cycle:5"))
    assert fixtures("complete(4)").m == 6
    assert fixtures("petersen").m == 15
    assert fixtures("star(3)").m == 3
    assert len(FIXTURE_NAMES) == 9
    for bad in ("nope", "cycle", "star6(3)", "cycle(2)"):
        with pytest.raises(DomainError):
            fixtures(bad)
