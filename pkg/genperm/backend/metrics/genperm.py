# genperm/backend/metrics/genperm.py
"""
Permanence and GenPerm.

For a vertex v and a community c containing it:

    P_g^c(v) = I^c(v) / (E_max(v) * D(v)) - (1 - c_in^c(v)) * I^c(v) / I(v)

I^c(v) sums 1/x_e over v's edges whose endpoints both lie in c, I(v) counts the
neighbors sharing at least one community with v, E_max(v) is the largest number
of v's non-sharing neighbors found in any single community (at least 1) and
c_in^c(v) is the clustering coefficient among v's neighbors inside c. Permanence is the
special case of a partition.
"""
import logging
from collections import defaultdict
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from genperm.backend.errors import MetricError
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph

logger = logging.getLogger(__name__)


class VertexContext(NamedTuple):
    v: int
    c: int
    degree: int
    internal: int
    internal_c: float
    e_max: int
    c_in: float


def internal_clustering(g: Graph, nbrs_in_c: Sequence[int], internal: int) -> float:
    """
    Clustering coefficient among `nbrs_in_c`.

    With fewer than two such neighbors the value is 1 when v itself has fewer
    than two internal neighbors overall and 0 otherwise.
    """
    k = len(nbrs_in_c)
    if k < 2:
        return 1.0 if internal < 2 else 0.0
    inside = set(nbrs_in_c)
    links = sum(len(g.neighbor_set(u) & inside) for u in nbrs_in_c) // 2
    return links / (k * (k - 1) / 2)


def genperm_value(internal_c: float, internal: int, e_max: int, degree: int, c_in: float) -> float:
    first = internal_c / (e_max * degree)
    if internal == 0:
        return first
    return first - (1.0 - c_in) * internal_c / internal


class _Frame(NamedTuple):
    degree: int
    internal: int
    e_max: int
    internal_c: Dict[int, float]
    nbrs_in_c: Dict[int, List[int]]


def _frame(g: Graph, cover: Cover, v: int) -> _Frame:
    if cover.node_count != g.node_count:
        raise MetricError(f"cover spans {cover.node_count} nodes, graph has {g.node_count}")
    degree = g.degree(v)
    if degree == 0:
        raise MetricError(f"vertex {v} is isolated (degree 0)")

    mine = cover.membership_set(v)
    internal = 0
    external: Dict[int, int] = defaultdict(int)
    internal_c: Dict[int, float] = {c: 0.0 for c in cover.membership[v]}
    nbrs_in_c: Dict[int, List[int]] = {c: [] for c in cover.membership[v]}
    for u in g.neighbors(v):
        theirs = cover.membership_set(u)
        shared = mine & theirs
        if shared:
            internal += 1
            share = 1.0 / len(shared)
            for c in shared:
                internal_c[c] += share
                nbrs_in_c[c].append(u)
        else:
            # neighbors sharing a community with v never count as external
            for c in theirs:
                external[c] += 1
    e_max = max(max(external.values(), default=0), 1)
    return _Frame(degree, internal, e_max, internal_c, nbrs_in_c)


def _context(g: Graph, frame: _Frame, v: int, c: int) -> VertexContext:
    c_in = internal_clustering(g, frame.nbrs_in_c[c], frame.internal)
    return VertexContext(v, c, frame.degree, frame.internal, frame.internal_c[c], frame.e_max, c_in)


def vertex_context(g: Graph, cover: Cover, v: int, c: int) -> VertexContext:
    """The quantities feeding P_g^c(v)."""
    if v not in cover.community(c):
        raise MetricError(f"vertex {v} is not a member of community {c}")
    return _context(g, _frame(g, cover, v), v, c)


def vertex_contexts(g: Graph, cover: Cover, v: int) -> List[VertexContext]:
    """One VertexContext per community of v, ascending community id."""
    frame = _frame(g, cover, v)
    return [_context(g, frame, v, c) for c in cover.membership[v]]


def _value(ctx: VertexContext) -> float:
    return genperm_value(ctx.internal_c, ctx.internal, ctx.e_max, ctx.degree, ctx.c_in)


def permanence(g: Graph, partition: Cover, v: int) -> float:
    """Permanence of v; `partition` must place every node in exactly one community."""
    if not partition.is_disjoint():
        raise MetricError("permanence needs a disjoint partition")
    frame = _frame(g, partition, v)
    (c,) = partition.membership[v]
    c_in = internal_clustering(g, frame.nbrs_in_c[c], frame.internal)
    return frame.internal / (frame.e_max * frame.degree) - (1.0 - c_in)


def genperm_vc(g: Graph, cover: Cover, v: int, c: int) -> float:
    return _value(vertex_context(g, cover, v, c))


def genperm_vertex(g: Graph, cover: Cover, v: int) -> float:
    """P_g(v): sum of v's shares over all communities it belongs to."""
    return sum(_value(ctx) for ctx in vertex_contexts(g, cover, v))


def genperm_per_vertex(g: Graph, cover: Cover) -> np.ndarray:
    return np.array([genperm_vertex(g, cover, v) for v in g.nodes()], dtype=float)


def genperm_network(g: Graph, cover: Cover) -> float:
    """Mean P_g(v) over all vertices, summed in ascending id order."""
    if g.node_count == 0:
        raise MetricError("GenPerm of an empty graph")
    total = 0.0
    for v in g.nodes():
        total += genperm_vertex(g, cover, v)
    return total / g.node_count


def genperm_table(g: Graph, cover: Cover) -> List[Tuple[int, int, float]]:
    """(v, c, P_g^c(v)) for every membership, ordered by vertex then community."""
    rows = []
    for v in g.nodes():
        for ctx in vertex_contexts(g, cover, v):
            rows.append((v, ctx.c, _value(ctx)))
    return rows


def max_share(g: Graph, cover: Cover) -> np.ndarray:
    """max_c P_g^c(v) per vertex."""
    return np.array([max(_value(ctx) for ctx in vertex_contexts(g, cover, v)) for v in g.nodes()], dtype=float)
