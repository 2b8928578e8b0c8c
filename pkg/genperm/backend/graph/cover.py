# genperm/backend/graph/cover.py
import logging
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from genperm.backend.errors import CoverError
from genperm.backend.graph.graph import Graph

logger = logging.getLogger(__name__)


class Cover:
    """
    A set of possibly overlapping communities over every node of a graph.

    Instances come from build_cover; communities are frozensets indexed by
    position, `membership[v]` lists the ids of v's communities in ascending
    order and `edge_sharing[i]` is x_e for `graph.edges[i]`.
    """

    def __init__(
        self,
        graph: Graph,
        communities: Tuple[frozenset, ...],
        implicit_singletons: int = 0,
        duplicates_collapsed: int = 0,
    ):
        self.graph = graph
        self.communities = communities
        self.implicit_singletons = implicit_singletons
        self.duplicates_collapsed = duplicates_collapsed

        members: List[List[int]] = [[] for _ in range(graph.node_count)]
        for cid, comm in enumerate(communities):
            for v in comm:
                members[v].append(cid)
        self.membership: Tuple[Tuple[int, ...], ...] = tuple(tuple(m) for m in members)
        self._membership_sets = tuple(frozenset(m) for m in members)

        sharing = np.zeros(graph.edge_count, dtype=np.int64)
        for i, (u, v) in enumerate(graph.edges):
            sharing[i] = len(self._membership_sets[u] & self._membership_sets[v])
        self.edge_sharing = sharing

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    def __len__(self) -> int:
        return len(self.communities)

    def __iter__(self):
        return iter(self.communities)

    def community(self, c: int) -> frozenset:
        if not 0 <= c < len(self.communities):
            raise CoverError(f"community id {c} outside 0..{len(self.communities) - 1}")
        return self.communities[c]

    def communities_of(self, v: int) -> Tuple[int, ...]:
        return self.membership[v]

    def membership_set(self, v: int) -> frozenset:
        return self._membership_sets[v]

    def overlap_counts(self) -> np.ndarray:
        """O_i: number of communities containing each node."""
        return np.fromiter((len(m) for m in self.membership), dtype=np.int64, count=self.node_count)

    def sharing(self, u: int, v: int) -> int:
        """x_e for the edge (u, v)."""
        return int(self.edge_sharing[self.graph.edge_id(u, v)])

    def is_disjoint(self) -> bool:
        return all(len(m) == 1 for m in self.membership)

    def to_lists(self) -> List[List[int]]:
        return [sorted(c) for c in self.communities]

    def __repr__(self) -> str:
        return f"Cover(communities={len(self.communities)}, nodes={self.node_count})"


def build_cover(g: Graph, communities: Iterable[Iterable[int]]) -> Cover:
    """
    Index `communities` against `g`.

    Empty communities are skipped, repeated node sets are collapsed to their
    first occurrence and every node left uncovered gets its own singleton
    community (appended last, ascending id).
    """
    n = g.node_count
    seen = set()
    comms: List[frozenset] = []
    duplicates = 0
    for raw in communities:
        comm = frozenset(int(v) for v in raw)
        if not comm:
            continue
        bad = [v for v in comm if not 0 <= v < n]
        if bad:
            raise CoverError(f"node id {min(bad)} out of range for a graph with {n} nodes")
        if comm in seen:
            duplicates += 1
            continue
        seen.add(comm)
        comms.append(comm)

    covered = np.zeros(n, dtype=bool)
    for comm in comms:
        covered[list(comm)] = True
    uncovered = np.flatnonzero(~covered)
    for v in uncovered:
        comms.append(frozenset((int(v),)))

    if duplicates:
        logger.info("collapsed %d duplicate communities", duplicates)
    if len(uncovered):
        logger.warning("%d uncovered nodes wrapped in implicit singleton communities", len(uncovered))
    return Cover(g, tuple(comms), implicit_singletons=len(uncovered), duplicates_collapsed=duplicates)


def canonical_order(communities: Iterable[Iterable[int]]) -> List[List[int]]:
    """Sorted member lists ordered by (smallest member, size, members)."""
    lists = [sorted(set(c)) for c in communities if c]
    return sorted(lists, key=lambda c: (c[0], len(c), c))


class CommunityStats(NamedTuple):
    n_nodes: int
    n_edges: int
    density: float


def community_stats(cover: Cover, c: int) -> CommunityStats:
    """Node count, internal edge count and edge density of community c."""
    comm = cover.community(c)
    g = cover.graph
    twice = sum(len(g.neighbor_set(v) & comm) for v in comm)
    n_c = len(comm)
    n_e = twice // 2
    pairs = n_c * (n_c - 1) / 2
    return CommunityStats(n_c, n_e, n_e / pairs if pairs else 0.0)


def max_edge_sharing(cover: Cover) -> int:
    """R: the largest x_e over all edges, 0 for an edgeless graph."""
    if cover.edge_sharing.size == 0:
        return 0
    return int(cover.edge_sharing.max())


def restrict_cover(cover: Cover, subgraph: Graph, id_map: Dict[int, int]) -> Cover:
    """Intersect every community with the kept nodes and re-index on `subgraph`."""
    restricted = []
    for comm in cover.communities:
        kept = [id_map[v] for v in comm if v in id_map]
        if kept:
            restricted.append(kept)
    return build_cover(subgraph, restricted)


def lift_communities(communities: Sequence[Iterable[int]], id_map: Dict[int, int]) -> List[List[int]]:
    """Map communities expressed in subgraph ids back to the original ids."""
    inverse = {new: old for old, new in id_map.items()}
    return [sorted(inverse[v] for v in comm) for comm in communities]


def incidence_matrix(cover: Cover) -> csr_matrix:
    """Sparse community-by-node 0/1 matrix."""
    rows, cols = [], []
    for cid, comm in enumerate(cover.communities):
        rows.extend([cid] * len(comm))
        cols.extend(comm)
    data = np.ones(len(rows), dtype=np.int64)
    return csr_matrix((data, (rows, cols)), shape=(len(cover.communities), cover.node_count))
