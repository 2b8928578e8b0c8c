# genperm/backend/metrics/modularity.py
import numpy as np

from genperm.backend.errors import MetricError
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph


def eq_modularity(g: Graph, cover: Cover) -> float:
    """
    Extended modularity EQ.

    Every ordered pair (i, j) inside a community, the diagonal included, adds
    (A_ij - k_i k_j / 2m) / (O_i O_j); the total is divided by 2m.
    """
    m = g.edge_count
    if m == 0:
        raise MetricError("EQ is undefined on a graph without edges")
    two_m = 2.0 * m
    k = g.degrees().astype(float)
    inv_o = 1.0 / cover.overlap_counts().astype(float)

    total = 0.0
    for comm in cover.communities:
        members = sorted(comm)
        linked = 0.0
        for i in members:
            nbrs = [j for j in g.neighbors(i) if j in comm]
            if nbrs:
                linked += inv_o[i] * inv_o[nbrs].sum()
        expected = float(np.dot(k[members], inv_o[members])) ** 2 / two_m
        total += linked - expected
    return total / two_m


def qov_modularity(g: Graph, cover: Cover) -> float:
    """
    Overlapping modularity Q_ov.

    Per community: the mean over members of (in_i - out_i) / (d_i s_i), scaled
    by the community's edge density; communities of fewer than two nodes score 0
    but still count in the average over communities.
    """
    if len(cover) == 0:
        raise MetricError("Q_ov of an empty cover")
    s = cover.overlap_counts()

    total = 0.0
    for comm in cover.communities:
        n_c = len(comm)
        if n_c < 2:
            continue
        node_sum = 0.0
        twice_edges = 0
        for i in sorted(comm):
            d_i = g.degree(i)
            if d_i == 0:
                raise MetricError(f"vertex {i} has degree 0 inside a scored community")
            inside = len(g.neighbor_set(i) & comm)
            twice_edges += inside
            node_sum += (inside - (d_i - inside)) / (d_i * s[i])
        pairs = n_c * (n_c - 1) / 2
        total += (node_sum / n_c) * (twice_edges / 2) / pairs
    return total / len(cover)
