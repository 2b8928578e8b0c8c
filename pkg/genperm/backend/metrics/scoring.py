# genperm/backend/metrics/scoring.py
from typing import Dict

from pydantic import BaseModel

from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph
from genperm.backend.metrics.coverage import community_coverage, overlap_coverage
from genperm.backend.metrics.genperm import genperm_network
from genperm.backend.metrics.modularity import eq_modularity, qov_modularity

SCORING_METRICS = ("genperm", "eq", "qov", "cc", "oc")


class CoverScores(BaseModel):
    genperm: float
    eq: float
    qov: float
    cc: float
    oc: float

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in SCORING_METRICS}


def score_cover(g: Graph, cover: Cover) -> CoverScores:
    """All five scoring metrics of a cover."""
    return CoverScores(
        genperm=genperm_network(g, cover),
        eq=eq_modularity(g, cover),
        qov=qov_modularity(g, cover),
        cc=community_coverage(cover),
        oc=overlap_coverage(cover),
    )
