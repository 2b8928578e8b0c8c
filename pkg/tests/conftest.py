# tests/conftest.py
from itertools import combinations

import numpy as np
import pytest

from genperm.backend.graph import build_cover, build_graph
from genperm.backend.synth import gen_bridge_pair, gen_clique_ring


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bridge_pair():
    """Two K4 joined by the edge (0, 4), with the two cliques as ground truth."""
    return gen_bridge_pair(4)


@pytest.fixture
def ring_3_4():
    return gen_clique_ring(3, 4)


@pytest.fixture
def path3():
    g = build_graph([(0, 1), (1, 2)])
    return g, build_cover(g, [[0, 1, 2]])


@pytest.fixture
def k5():
    g = build_graph(combinations(range(5), 2))
    return g, build_cover(g, [range(5)])
