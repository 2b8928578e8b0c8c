import numpy as np
import pytest

from genperm.backend.errors import MetricError
from genperm.backend.graph import build_cover, build_graph
from genperm.backend.metrics.scoring import SCORING_METRICS
from genperm.backend.validate import (
    VALIDATION_METRICS,
    composite_performance,
    dense_rank,
    fscore,
    omega_index,
    onmi,
    rank_correlation_protocol,
    spearman_dense,
    validate_covers,
)
from tests.oracles import (
    comm_sets,
    naive_fscore,
    naive_omega,
    naive_onmi,
    random_graph,
    random_overlapping_cover,
    random_partition,
)


@pytest.fixture
def path4():
    return build_graph([(0, 1), (1, 2), (2, 3)])


def test_identical_covers_score_one(ring_3_4):
    _, truth = ring_3_4
    report = validate_covers(truth, truth)
    assert report.onmi == 1.0
    assert report.omega == pytest.approx(1.0)
    assert report.fscore == pytest.approx(1.0)
    assert report.composite == pytest.approx(3.0)
    assert composite_performance(truth, truth) == pytest.approx(3.0)


def test_identical_all_in_one_covers(path4):
    whole = build_cover(path4, [[0, 1, 2, 3]])
    assert onmi(whole, whole) == 1.0


def test_onmi_all_in_one_against_singletons_is_zero(path4):
    whole = build_cover(path4, [[0, 1, 2, 3]])
    fine = build_cover(path4, [[0], [1], [2], [3]])
    assert onmi(whole, fine) == pytest.approx(0.0)
    assert onmi(fine, whole) == pytest.approx(0.0)


def test_universe_mismatch(path3, path4):
    _, truth = path3
    other = build_cover(path4, [[0, 1], [2, 3]])
    with pytest.raises(MetricError):
        validate_covers(truth, other)


def test_omega_variants_by_hand(path3):
    g, truth = path3
    detected = build_cover(g, [[0, 1], [2]])
    assert omega_index(truth, detected) == pytest.approx(5 / 9)
    assert omega_index(truth, detected, "unordered") == pytest.approx(1 / 3)
    assert omega_index(truth, detected, "adjusted") == pytest.approx(0.0)
    assert omega_index(truth, truth, "adjusted") == pytest.approx(1.0)


def test_fscore_by_hand(path3):
    g, truth = path3
    detected = build_cover(g, [[0, 1], [2]])
    assert fscore(truth, detected) == pytest.approx((0.8 + 0.65) / 2)


def test_against_oracles(rng):
    checked = 0
    for _ in range(100):
        g = random_graph(rng, 9)
        truth = random_overlapping_cover(rng, g)
        detected = random_partition(rng, g) if rng.random() < 0.5 else random_overlapping_cover(rng, g)
        t, d = comm_sets(truth), comm_sets(detected)
        n = g.node_count
        assert omega_index(truth, detected) == pytest.approx(naive_omega(n, t, d))
        assert fscore(truth, detected) == pytest.approx(naive_fscore(t, d))
        if all(len(c) == n for c in t) and all(len(c) == n for c in d):
            continue
        assert onmi(truth, detected) == pytest.approx(naive_onmi(n, t, d), abs=1e-9)
        checked += 1
    assert checked > 50


def test_dense_rank():
    ranks = dense_rank([0.63, 0.53, 0.60, 0.56, 0.41, 0.60])
    assert ranks.tolist() == [1, 4, 2, 3, 5, 2]


def test_spearman_dense():
    assert spearman_dense([1.0, 2.0, 3.0], [10.0, 20.0, 30.0]) == pytest.approx(1.0)
    assert spearman_dense([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == pytest.approx(-1.0)
    with pytest.raises(MetricError):
        spearman_dense([1.0, 2.0], [1.0])
    with pytest.raises(MetricError):
        spearman_dense([1.0], [1.0])
    with pytest.raises(MetricError):
        spearman_dense([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_rank_correlation_protocol(ring_3_4):
    g, truth = ring_3_4
    whole = build_cover(g, [range(g.node_count)])
    singletons = build_cover(g, [[v] for v in g.nodes()])
    result = rank_correlation_protocol(g, truth, [("truth", truth), ("whole", whole), ("singletons", singletons)])
    assert [c.name for c in result.candidates] == ["truth", "whole", "singletons"]
    assert set(result.matrix) == set(SCORING_METRICS)
    for row in result.matrix.values():
        assert set(row) == set(VALIDATION_METRICS)
        assert all(-1.0 <= r <= 1.0 for r in row.values() if r is not None)
    scores = result.candidates[0].scores
    assert scores["onmi"] == 1.0
    assert scores["genperm"] == pytest.approx(0.7)
    assert np.isclose(result.candidates[1].scores["genperm"], 0.6)


def test_rank_correlation_leaves_tied_columns_empty(ring_3_4):
    g, truth = ring_3_4
    candidates = [
        ("whole", build_cover(g, [range(15)])),
        ("halves", build_cover(g, [range(8), range(8, 15)])),
        ("thirds", build_cover(g, [[0, 1, 2, 3, 12], [4, 5, 6, 7, 13], [8, 9, 10, 11, 14]])),
    ]
    result = rank_correlation_protocol(g, truth, candidates)
    # every candidate covers all nodes with communities of size >= 3
    assert {c.scores["cc"] for c in result.candidates} == {1.0}
    assert result.matrix["cc"] == {v: None for v in VALIDATION_METRICS}
    r = result.matrix["genperm"]["onmi"]
    assert isinstance(r, float) and -1.0 <= r <= 1.0


def test_rank_correlation_needs_two_candidates(ring_3_4):
    g, truth = ring_3_4
    with pytest.raises(MetricError):
        rank_correlation_protocol(g, truth, [("truth", truth)])
