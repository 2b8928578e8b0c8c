from genperm.backend.graph.graph import (
    UNREACHABLE,
    Graph,
    bfs_distances,
    build_graph,
    connected_components,
    induced_subgraph,
    is_connected,
)
from genperm.backend.graph.cover import (
    CommunityStats,
    Cover,
    build_cover,
    canonical_order,
    community_stats,
    incidence_matrix,
    lift_communities,
    max_edge_sharing,
    restrict_cover,
)

__all__ = [
    "UNREACHABLE",
    "Graph",
    "bfs_distances",
    "build_graph",
    "connected_components",
    "induced_subgraph",
    "is_connected",
    "CommunityStats",
    "Cover",
    "build_cover",
    "canonical_order",
    "community_stats",
    "incidence_matrix",
    "lift_communities",
    "max_edge_sharing",
    "restrict_cover",
]
