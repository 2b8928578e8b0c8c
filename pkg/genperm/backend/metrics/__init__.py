from genperm.backend.metrics.coverage import community_coverage, overlap_coverage
from genperm.backend.metrics.genperm import (
    VertexContext,
    genperm_network,
    genperm_per_vertex,
    genperm_table,
    genperm_value,
    genperm_vc,
    genperm_vertex,
    internal_clustering,
    max_share,
    permanence,
    vertex_context,
    vertex_contexts,
)
from genperm.backend.metrics.modularity import eq_modularity, qov_modularity
from genperm.backend.metrics.scoring import SCORING_METRICS, CoverScores, score_cover

__all__ = [
    "SCORING_METRICS",
    "CoverScores",
    "VertexContext",
    "community_coverage",
    "eq_modularity",
    "genperm_network",
    "genperm_per_vertex",
    "genperm_table",
    "genperm_value",
    "genperm_vc",
    "genperm_vertex",
    "internal_clustering",
    "max_share",
    "overlap_coverage",
    "permanence",
    "qov_modularity",
    "score_cover",
    "vertex_context",
    "vertex_contexts",
]
