import numpy as np
import pytest

from genperm.backend.errors import CoverError
from genperm.backend.graph import (
    build_cover,
    build_graph,
    canonical_order,
    community_stats,
    incidence_matrix,
    induced_subgraph,
    lift_communities,
    max_edge_sharing,
    restrict_cover,
)


@pytest.fixture
def square():
    # 0-1-2-3-0 with chord 0-2
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def test_implicit_singletons_and_duplicates(square):
    cover = build_cover(square, [[0, 1], [], [1, 0]])
    assert [sorted(c) for c in cover.communities] == [[0, 1], [2], [3]]
    assert cover.implicit_singletons == 2
    assert cover.duplicates_collapsed == 1


def test_out_of_range_member(square):
    with pytest.raises(CoverError):
        build_cover(square, [[0, 9]])


def test_membership_and_edge_sharing(square):
    cover = build_cover(square, [[0, 1, 2], [0, 2, 3]])
    assert cover.membership[0] == (0, 1)
    assert cover.membership[1] == (0,)
    assert cover.sharing(0, 2) == 2
    assert cover.sharing(2, 0) == 2
    assert cover.sharing(0, 1) == 1
    assert cover.sharing(2, 3) == 1
    assert max_edge_sharing(cover) == 2
    assert cover.overlap_counts().tolist() == [2, 1, 2, 1]
    assert not cover.is_disjoint()


def test_community_lookup(square):
    cover = build_cover(square, [[0, 1]])
    assert cover.community(0) == frozenset({0, 1})
    with pytest.raises(CoverError):
        cover.community(5)


def test_canonical_order():
    assert canonical_order([[5, 4], [1, 3, 2], [1], [4, 5, 6]]) == [[1], [1, 2, 3], [4, 5], [4, 5, 6]]


def test_community_stats(square):
    cover = build_cover(square, [[0, 1, 2], [3]])
    stats = community_stats(cover, 0)
    assert stats.n_nodes == 3
    assert stats.n_edges == 3
    assert stats.density == pytest.approx(1.0)
    assert community_stats(cover, 1).density == 0.0


def test_restrict_and_lift(square):
    cover = build_cover(square, [[0, 1], [2, 3]])
    sub, id_map = induced_subgraph(square, [1, 2, 3])
    restricted = restrict_cover(cover, sub, id_map)
    assert sorted(sorted(c) for c in restricted.communities) == [[0], [1, 2]]
    assert sorted(lift_communities(restricted.to_lists(), id_map)) == [[1], [2, 3]]


def test_incidence_matrix(square):
    cover = build_cover(square, [[0, 1, 2], [0, 2, 3]])
    m = incidence_matrix(cover).toarray()
    assert m.shape == (2, 4)
    assert np.array_equal(m, [[1, 1, 1, 0], [1, 0, 1, 1]])
