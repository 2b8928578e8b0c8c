# genperm/backend/graph/graph.py
import logging
from typing import Dict, Iterable, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from genperm.backend.errors import GraphError

logger = logging.getLogger(__name__)

# distance reported by bfs_distances for nodes outside the source's component
UNREACHABLE = -1
_MAX_ID = np.iinfo(np.int64).max


class Graph:
    """
    Immutable undirected simple graph over dense ids 0..node_count-1.

    Built through build_graph (or induced_subgraph); adjacency lists are sorted
    and symmetric, edges are stored once as (u, v) with u < v.
    """

    __slots__ = (
        "node_count",
        "edges",
        "adjacency",
        "duplicates_dropped",
        "self_loops_dropped",
        "_neighbor_sets",
        "_edge_index",
        "_csr",
    )

    def __init__(
        self,
        node_count: int,
        edges: Tuple[Tuple[int, int], ...],
        adjacency: Tuple[Tuple[int, ...], ...],
        duplicates_dropped: int = 0,
        self_loops_dropped: int = 0,
    ):
        self.node_count = node_count
        self.edges = edges
        self.adjacency = adjacency
        self.duplicates_dropped = duplicates_dropped
        self.self_loops_dropped = self_loops_dropped
        self._neighbor_sets = tuple(frozenset(nbrs) for nbrs in adjacency)
        self._edge_index: Dict[Tuple[int, int], int] = {e: i for i, e in enumerate(edges)}
        self._csr = None

    # -----------------------------
    # Queries
    # -----------------------------
    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def nodes(self) -> range:
        return range(self.node_count)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.node_count)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset:
        return self._neighbor_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edge_id(self, u: int, v: int) -> int:
        """Position of edge (u, v) in `edges`; KeyError when absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def to_csr(self) -> csr_matrix:
        if self._csr is None:
            n = self.node_count
            if self.edges:
                e = np.asarray(self.edges, dtype=np.int64)
                rows = np.concatenate([e[:, 0], e[:, 1]])
                cols = np.concatenate([e[:, 1], e[:, 0]])
            else:
                rows = cols = np.empty(0, dtype=np.int64)
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix((data, (rows, cols)), shape=(n, n))
        return self._csr

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def _check_id(x) -> int:
    try:
        v = int(x)
    except (TypeError, ValueError):
        raise GraphError(f"node id {x!r} is not an integer") from None
    if v < 0:
        raise GraphError(f"node id {v} is negative")
    if v > _MAX_ID:
        raise GraphError(f"node id {v} overflows a 64-bit integer")
    return v


def build_graph(edge_pairs: Iterable[Tuple[int, int]], node_count_hint: int | None = None) -> Graph:
    """
    Build a simple graph from raw id pairs.

    Duplicate pairs (in either orientation) collapse to one edge and self-loops
    are dropped; both counts are kept on the returned graph.

    Args:
        edge_pairs: iterable of (u, v) ids, 0-based
        node_count_hint: lower bound for node_count (isolated tail nodes)
    """
    seen = set()
    duplicates = 0
    loops = 0
    max_id = -1
    for u, v in edge_pairs:
        u, v = _check_id(u), _check_id(v)
        max_id = max(max_id, u, v)
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)

    n = max_id + 1
    if node_count_hint is not None:
        n = max(n, _check_id(node_count_hint))

    edges = tuple(sorted(seen))
    adj: List[List[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    adjacency = tuple(tuple(sorted(a)) for a in adj)

    if duplicates or loops:
        logger.warning("dropped %d duplicate edges and %d self-loops", duplicates, loops)
    return Graph(n, edges, adjacency, duplicates_dropped=duplicates, self_loops_dropped=loops)


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Subgraph on `nodes` with ids remapped in ascending old-id order."""
    keep = sorted(set(nodes))
    if not keep:
        raise GraphError("induced subgraph of an empty node set")
    if keep[0] < 0 or keep[-1] >= g.node_count:
        raise GraphError(f"node ids must lie in 0..{g.node_count - 1}")

    id_map = {old: new for new, old in enumerate(keep)}
    adjacency = []
    edges = []
    for old in keep:
        nbrs = tuple(id_map[w] for w in g.adjacency[old] if w in id_map)
        new = id_map[old]
        adjacency.append(nbrs)
        edges.extend((new, w) for w in nbrs if new < w)
    return Graph(len(keep), tuple(sorted(edges)), tuple(adjacency)), id_map


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Unweighted hop distances from `source`; UNREACHABLE outside its component."""
    if not 0 <= source < g.node_count:
        raise GraphError(f"source {source} outside 0..{g.node_count - 1}")
    dist = csgraph.shortest_path(g.to_csr(), method="D", directed=False, unweighted=True, indices=source)
    out = np.full(g.node_count, UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(dist)
    out[finite] = dist[finite].astype(np.int64)
    return out


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node; labels are 0..k-1 in order of first node."""
    if g.node_count == 0:
        return np.empty(0, dtype=np.int64)
    _, labels = csgraph.connected_components(g.to_csr(), directed=False)
    # relabel so label order follows node order
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    return remap[labels].astype(np.int64)


def is_connected(g: Graph) -> bool:
    return g.node_count <= 1 or int(connected_components(g).max()) == 0
