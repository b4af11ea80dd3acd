import math
from fractions import Fraction

import pytest

from astopo import (
    DisconnectedGraphError,
    EmptyGraphError,
    UndefinedMetricError,
    average_degree,
    avg_distance_by_degree,
    betweenness,
    build_from_edges,
    distance_distribution,
    edge_betweenness_by_degrees,
    node_betweenness_by_degree,
    spectrum_top,
)

from .generators import (
    clique,
    cycle,
    gnp,
    path,
    random_connected,
    scatter_asns,
    star,
)
from .oracles import betweenness_oracle, distance_histogram_oracle


# -- distance distribution ---------------------------------------------------


def test_distance_distribution_path4():
    d = distance_distribution(path(4))
    assert d.counts == {1: 3, 2: 2, 3: 1}
    assert d.pair_count == 6
    assert d.mean == pytest.approx(5 / 3)
    assert d.sigma == pytest.approx(math.sqrt(5 / 9))


def test_distance_distribution_cycle6():
    d = distance_distribution(cycle(6))
    assert d.counts == {1: 6, 2: 6, 3: 3}
    assert d.mean == pytest.approx(1.8)


def test_distance_distribution_clique_is_degenerate():
    d = distance_distribution(clique(5))
    assert d.counts == {1: 10}
    assert d.mean == 1.0
    assert d.sigma == 0.0


def test_distance_probability_and_expansion():
    d = distance_distribution(path(4))
    assert sum(d.probability(k) for k in d.counts) == pytest.approx(1.0)
    assert d.probability(2) == pytest.approx(2 / 6)
    assert d.expansion(2) == pytest.approx(4 * 2 / 6)


def test_distance_distribution_rejects_disconnected():
    g = build_from_edges([(1, 2), (3, 4)])
    with pytest.raises(DisconnectedGraphError, match="giant_component"):
        distance_distribution(g)


def test_distance_distribution_rejects_trivial():
    with pytest.raises(EmptyGraphError):
        distance_distribution(build_from_edges([]))
    with pytest.raises(UndefinedMetricError):
        distance_distribution(build_from_edges([], nodes=[7]))


@pytest.mark.parametrize("seed", range(6))
def test_distance_histogram_matches_oracle(seed):
    g = scatter_asns(random_connected(40, extra=15, seed=seed), seed=seed)
    d = distance_distribution(g)
    assert dict(d.counts) == distance_histogram_oracle(g)
    assert d.pair_count == g.n * (g.n - 1) // 2


def test_avg_distance_by_degree_star():
    by_k = avg_distance_by_degree(star(5))
    assert by_k == {1: pytest.approx(7 / 4), 4: pytest.approx(1.0)}


def test_avg_distance_by_degree_path4():
    by_k = avg_distance_by_degree(path(4))
    # ends: (1+2+3)/3; middles: (1+1+2)/3
    assert by_k[1] == pytest.approx(2.0)
    assert by_k[2] == pytest.approx(4 / 3)


# -- betweenness --------------------------------------------------------------


def test_star_hub_attains_maximum():
    g = star(5)
    b = betweenness(g)
    assert b.node_b[1] == 20.0
    assert b.norm == 20
    assert b.node_normalized()[1] == 1.0
    for leaf in (2, 3, 4, 5):
        assert b.node_b[leaf] == 8.0


def test_star_pendant_edges_are_constant():
    n = 9
    b = betweenness(star(n))
    for e, v in b.edge_b.items():
        assert v == 2.0 * (n - 1), e


def test_triangle_edge_betweenness():
    b = betweenness(cycle(3))
    for v in b.edge_b.values():
        assert v == 2.0
    assert b.edge_normalized()[(1, 2)] == pytest.approx(2 / 6)


def test_path4_edge_cells():
    b = betweenness(path(4))
    assert b.edge_b[(1, 2)] == 6.0
    assert b.edge_b[(2, 3)] == 8.0
    assert b.edge_b[(3, 4)] == 6.0


def test_betweenness_mass_identities():
    # every ordered reachable pair contributes L+1 node mass, L edge mass
    g = random_connected(30, extra=12, seed=5)
    b = betweenness(g)
    d = distance_distribution(g)
    total_length = 2 * sum(k * c for k, c in d.counts.items())
    pairs = 2 * d.pair_count
    assert sum(b.node_b.values()) == pytest.approx(total_length + pairs)
    assert sum(b.edge_b.values()) == pytest.approx(total_length)


def test_betweenness_disconnected_components_are_independent():
    g = build_from_edges([(1, 2), (1, 3), (5, 6)], nodes=[9])
    b = betweenness(g)
    assert b.node_b[9] == 0.0
    assert b.node_b[5] == 2.0  # endpoint credit within its 2-node component
    # hub of the 3-star part: on all 6 ordered pairs of its component
    assert b.node_b[1] == 6.0


def test_betweenness_needs_two_nodes():
    with pytest.raises(UndefinedMetricError):
        betweenness(build_from_edges([], nodes=[1]))


@pytest.mark.parametrize("seed", range(5))
def test_exact_betweenness_equals_enumeration(seed):
    g = scatter_asns(random_connected(18, extra=8, seed=seed), seed=seed)
    b = betweenness(g, exact=True)
    node_want, edge_want = betweenness_oracle(g)
    for a in g.nodes:
        assert b.node_b[a] == node_want[a]
    for e in g.edges():
        assert b.edge_b[e] == edge_want[e]


def test_exact_values_are_rational():
    b = betweenness(random_connected(12, extra=6, seed=3), exact=True)
    assert all(isinstance(v, (int, Fraction)) for v in b.node_b.values())


@pytest.mark.parametrize("seed", range(4))
def test_float_betweenness_tracks_exact(seed):
    g = random_connected(25, extra=10, seed=seed)
    approx = betweenness(g)
    exact = betweenness(g, exact=True)
    for a in g.nodes:
        assert approx.node_b[a] == pytest.approx(float(exact.node_b[a]), rel=1e-12)
    for e in g.edges():
        assert approx.edge_b[e] == pytest.approx(float(exact.edge_b[e]), rel=1e-12)


def test_betweenness_worker_count_is_invisible():
    # more nodes than one source block, so the pool path actually runs
    g = random_connected(300, extra=150, seed=11)
    one = betweenness(g, workers=1)
    two = betweenness(g, workers=2)
    assert one.node_b == two.node_b
    assert one.edge_b == two.edge_b


def test_distance_worker_count_is_invisible():
    g = random_connected(300, extra=100, seed=12)
    assert distance_distribution(g, workers=1) == distance_distribution(
        g, workers=2
    )


def test_betweenness_by_degree_tables():
    g = star(5)
    b = betweenness(g)
    assert node_betweenness_by_degree(g, b) == {
        1: pytest.approx(8 / 20),
        4: pytest.approx(1.0),
    }
    assert edge_betweenness_by_degrees(g, b) == {
        (1, 4): pytest.approx(8 / 20)
    }


def test_mean_normalized_betweenness():
    b = betweenness(star(5))
    assert b.mean_node_normalized() == pytest.approx(52 / 100)
    assert b.mean_edge_normalized() == pytest.approx(8 / 20)


def test_mean_edge_betweenness_without_edges():
    b = betweenness(build_from_edges([], nodes=[1, 2]))
    with pytest.raises(UndefinedMetricError):
        b.mean_edge_normalized()


# -- spectrum ------------------------------------------------------------------


def test_spectrum_clique4():
    s = spectrum_top(clique(4), k=4)
    assert s.eigenvalues == pytest.approx((3.0, -1.0, -1.0, -1.0))
    assert s.method == "dense"


def test_spectrum_star5_sign_order():
    s = spectrum_top(star(5), k=5)
    # +-2 tie in magnitude resolves positive first
    assert s.eigenvalues[0] == pytest.approx(2.0)
    assert s.eigenvalues[1] == pytest.approx(-2.0)
    assert s.eigenvalues[2:] == pytest.approx((0.0, 0.0, 0.0), abs=1e-9)


def test_spectrum_cycle6_closed_form():
    s = spectrum_top(cycle(6), k=6)
    # 2*cos(2*pi*j/6) gives {2, 1, 1, -1, -1, -2}; magnitude order with
    # positive signs first within each tie
    assert s.eigenvalues == pytest.approx(
        (2.0, -2.0, 1.0, 1.0, -1.0, -1.0), abs=1e-9
    )


def test_spectrum_default_k_is_ten_percent():
    g = gnp(37, 0.2, seed=1)
    assert spectrum_top(g).k == math.ceil(0.1 * 37)


def test_spectrum_validation():
    with pytest.raises(EmptyGraphError):
        spectrum_top(build_from_edges([]))
    g = clique(4)
    with pytest.raises(ValueError):
        spectrum_top(g, k=0)
    with pytest.raises(ValueError):
        spectrum_top(g, k=5)
    with pytest.raises(ValueError):
        spectrum_top(g, k=3, method="iterative")
    with pytest.raises(ValueError):
        spectrum_top(g, k=1, method="qr")


@pytest.mark.parametrize("seed", range(4))
def test_iterative_agrees_with_dense(seed):
    g = random_connected(120, extra=180, seed=seed)
    k = 8
    dense = spectrum_top(g, k=k, method="dense")
    iterative = spectrum_top(g, k=k, method="iterative")
    assert iterative.method == "iterative"
    for a, b in zip(dense.eigenvalues, iterative.eigenvalues):
        assert b == pytest.approx(a, rel=1e-6, abs=1e-8)


@pytest.mark.parametrize("seed", range(5))
def test_leading_eigenvalue_bounds(seed):
    g = random_connected(60, extra=90, seed=seed)
    top = spectrum_top(g, k=1).eigenvalues[0]
    k_max = max(k for _a, k in g.degrees())
    assert average_degree(g) <= top + 1e-9
    assert top <= k_max + 1e-9


def test_spectrum_descending_magnitude():
    s = spectrum_top(gnp(50, 0.2, seed=9), k=10)
    mags = [abs(v) for v in s.eigenvalues]
    assert all(a >= b - 1e-9 for a, b in zip(mags, mags[1:]))
