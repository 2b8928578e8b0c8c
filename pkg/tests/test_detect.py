from itertools import combinations

import pytest

from genperm.backend.detect import DetectConfig, constant_communities, detect_cover, max_genperm, ordering_runs
from genperm.backend.errors import DetectionError
from genperm.backend.graph import build_cover, build_graph
from genperm.backend.metrics import genperm_network
from genperm.backend.synth import gen_bridge_pair, gen_clique_ring, gen_clique_star, gen_planted_overlap


def _sorted(cover):
    return sorted(sorted(c) for c in cover.communities)


def test_two_cliques_and_a_bridge(bridge_pair):
    g, truth = bridge_pair
    result = max_genperm(g)
    assert _sorted(result.cover) == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert result.converged
    assert result.iterations_used == len(result.objective_history) == 2
    # only the two bridge ends move; the triangles they join merge into the cliques
    assert result.vertex_updates == [2, 0]
    assert result.merges == [4, 0]
    assert result.objective_history == [pytest.approx(0.9375), pytest.approx(0.9375)]
    assert result.per_vertex_genperm[1] == pytest.approx(1.0)
    assert result.per_vertex_genperm[0] == pytest.approx(0.75)


def test_ring_of_five_cliques():
    g, truth = gen_clique_ring(5, 5)
    result = max_genperm(g, DetectConfig(max_iter=15))
    cliques = [list(range(i * 5, i * 5 + 5)) for i in range(5)]
    # a bridge scores 1/2 next to one attachment vertex and 0 alone, so each
    # keeps the edge to the second-lowest vertex of the clique before it
    pairs = [[i * 5 + 1, 25 + i] for i in range(5)]
    assert _sorted(result.cover) == sorted(cliques + pairs)
    assert result.converged
    assert result.vertex_updates == [5, 0]
    assert result.objective_history[-1] == pytest.approx(25.5 / 30)
    assert result.objective_history[-1] > genperm_network(g, truth)
    for b in range(25, 30):
        assert len(result.cover.membership[b]) == 1


def test_clique_star_from_edge_communities():
    star = gen_clique_star(4, [4, 4, 4, 4])
    result = max_genperm(star.graph)
    assert _sorted(result.cover) == _sorted(star.cover)
    for v in star.center:
        assert len(result.cover.membership[v]) == 3
    assert result.converged
    assert result.vertex_updates == [3, 0]
    assert result.objective_history == [pytest.approx(1.0), pytest.approx(1.0)]


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_bridge_pair(4),
        lambda: gen_clique_ring(4, 5),
        lambda: (gen_clique_star(4, [4, 4, 4, 4]).graph, None),
        lambda: (build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4), (4, 5), (5, 3)]), None),
    ],
)
def test_never_below_one_community_for_everything(make):
    g, _ = make()
    whole = build_cover(g, [range(g.node_count)])
    result = max_genperm(g)
    assert result.objective_history[-1] >= genperm_network(g, whole) - 1e-12
    history = result.objective_history
    assert all(b >= a - 1e-9 for a, b in zip(history, history[1:]))


@pytest.mark.slow
def test_planted_overlap_runs_converge_within_fifteen_sweeps():
    settled = 0
    for seed in range(20):
        g, _ = gen_planted_overlap([50] * 4, 0.1, 0.3, 0.01, seed=seed)
        result = max_genperm(g, DetectConfig(max_iter=15))
        history = result.objective_history
        assert all(b >= a - 1e-9 for a, b in zip(history, history[1:]))
        settled += result.converged and result.iterations_used < 15
    assert settled >= 18


def test_warm_start_from_clique_star_truth_is_a_fixed_point():
    star = gen_clique_star(4, [4, 4, 4, 4])
    cfg = DetectConfig(initial_communities=star.cover.to_lists())
    result = max_genperm(star.graph, cfg)
    assert _sorted(result.cover) == _sorted(star.cover)
    assert result.iterations_used == 1
    assert result.vertex_updates == [0]
    assert result.objective_history == [pytest.approx(1.0)]


def test_iteration_cap(bridge_pair):
    g, _ = bridge_pair
    result = max_genperm(g, DetectConfig(max_iter=1))
    assert result.iterations_used == 1
    assert not result.converged


def test_deterministic(bridge_pair):
    g, _ = bridge_pair
    a = max_genperm(g, DetectConfig(ordering="shuffle", seed=11))
    b = max_genperm(g, DetectConfig(ordering="shuffle", seed=11))
    assert a.cover.to_lists() == b.cover.to_lists()
    assert a.objective_history == b.objective_history


def test_rejects_unsuitable_graphs():
    with pytest.raises(DetectionError):
        max_genperm(build_graph([]))
    with pytest.raises(DetectionError):
        max_genperm(build_graph([(0, 1)], node_count_hint=3))
    two = build_graph(list(combinations(range(4), 2)) + list(combinations(range(4, 8), 2)))
    with pytest.raises(DetectionError):
        max_genperm(two)


def test_per_component_detection():
    two = build_graph(list(combinations(range(4), 2)) + list(combinations(range(4, 8), 2)))
    result = max_genperm(two, DetectConfig(per_component=True))
    assert _sorted(result.cover) == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert result.objective_history[-1] == pytest.approx(1.0)
    assert detect_cover(two, DetectConfig(per_component=True)).to_lists() == result.cover.to_lists()


def test_config_validation():
    with pytest.raises(ValueError):
        DetectConfig(max_iter=0)
    with pytest.raises(ValueError):
        DetectConfig(ordering="random")


def test_constant_communities_by_hand():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 4)])
    a = build_cover(g, [[0, 1, 2], [3, 4]])
    b = build_cover(g, [[0, 1], [2, 3, 4]])
    groups, phi = constant_communities([a, b])
    assert groups == [[0, 1], [2], [3, 4]]
    assert phi == pytest.approx(3 / 5)


def test_constant_communities_needs_two_runs(bridge_pair):
    _, truth = bridge_pair
    with pytest.raises(DetectionError):
        constant_communities([truth])


def test_ordering_runs(bridge_pair):
    g, _ = bridge_pair
    report = ordering_runs(g, runs=3, seed=5)
    assert len(report.results) == 3
    assert len(set(report.seeds)) == 3
    assert 0.0 < report.phi <= 1.0
    assert ordering_runs(g, runs=3, seed=5).groups == report.groups
