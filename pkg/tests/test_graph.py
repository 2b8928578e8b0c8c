import networkx as nx
import numpy as np
import pytest

from genperm.backend.errors import GraphError
from genperm.backend.graph import (
    UNREACHABLE,
    bfs_distances,
    build_graph,
    connected_components,
    induced_subgraph,
    is_connected,
)
from oracles import random_graph, to_nx


def test_triangle():
    g = build_graph([(0, 1), (1, 2), (2, 0)])
    assert g.node_count == 3
    assert g.edge_count == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.neighbors(0) == (1, 2)


def test_duplicates_and_self_loops_are_counted():
    g = build_graph([(0, 1), (1, 0), (2, 2)])
    assert g.node_count == 3
    assert g.edge_count == 1
    assert g.duplicates_dropped == 1
    assert g.self_loops_dropped == 1


def test_node_count_hint_adds_isolated_tail():
    g = build_graph([(0, 1)], node_count_hint=5)
    assert g.node_count == 5
    assert g.degree(4) == 0


@pytest.mark.parametrize("pair", [(-1, 2), (0, 2**63), ("a", 1)])
def test_bad_ids_rejected(pair):
    with pytest.raises(GraphError):
        build_graph([pair])


def test_degree_sum_and_symmetry(rng):
    for _ in range(20):
        g = random_graph(rng, 25)
        assert int(g.degrees().sum()) == 2 * g.edge_count
        for v in g.nodes():
            for u in g.neighbors(v):
                assert g.has_edge(u, v)


def test_edge_id_either_orientation():
    g = build_graph([(0, 1), (1, 2)])
    assert g.edge_id(2, 1) == g.edge_id(1, 2) == 1
    with pytest.raises(KeyError):
        g.edge_id(0, 2)


def test_induced_subgraph_remaps_ascending():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
    sub, id_map = induced_subgraph(g, [3, 1, 2])
    assert id_map == {1: 0, 2: 1, 3: 2}
    assert sub.edges == ((0, 1), (0, 2), (1, 2))


def test_induced_subgraph_errors():
    g = build_graph([(0, 1)])
    with pytest.raises(GraphError):
        induced_subgraph(g, [])
    with pytest.raises(GraphError):
        induced_subgraph(g, [0, 7])


def test_bfs_matches_networkx(rng):
    for _ in range(20):
        g = random_graph(rng, 30)
        expected = nx.single_source_shortest_path_length(to_nx(g), 0)
        dist = bfs_distances(g, 0)
        for v in g.nodes():
            assert dist[v] == expected.get(v, UNREACHABLE)


def test_components_labelled_in_node_order():
    g = build_graph([(3, 4), (0, 1)], node_count_hint=6)
    labels = connected_components(g)
    assert labels.tolist() == [0, 0, 1, 2, 2, 3]
    assert not is_connected(g)
    assert is_connected(build_graph([(0, 1), (1, 2)]))


def test_csr_is_symmetric(ring_3_4):
    g, _ = ring_3_4
    a = g.to_csr().toarray()
    assert np.array_equal(a, a.T)
    assert a.sum() == 2 * g.edge_count
