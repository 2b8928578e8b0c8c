# genperm/backend/validate/ranking.py
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.stats import pearsonr, rankdata

from genperm.backend.errors import MetricError
from genperm.backend.experiments.trials import run_trials
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph
from genperm.backend.metrics.scoring import SCORING_METRICS, score_cover
from genperm.backend.validate.report import VALIDATION_METRICS, validate_covers

logger = logging.getLogger(__name__)


def dense_rank(values: Sequence[float]) -> np.ndarray:
    """Rank 1 for the highest value; ties share a rank, the next value takes the next integer."""
    return rankdata(-np.asarray(values, dtype=float), method="dense").astype(np.int64)


def spearman_dense(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of the dense ranks of x and y."""
    if len(x) != len(y):
        raise MetricError(f"rank correlation of sequences with lengths {len(x)} and {len(y)}")
    if len(x) < 2:
        raise MetricError("rank correlation needs at least two values")
    rx, ry = dense_rank(x), dense_rank(y)
    if rx.min() == rx.max() or ry.min() == ry.max():
        raise MetricError("rank correlation undefined: zero rank variance")
    r = float(pearsonr(rx, ry).statistic)
    return min(1.0, max(-1.0, r))


class CandidateScores(BaseModel):
    name: str
    scores: Dict[str, float]


class RankCorrelation(BaseModel):
    candidates: List[CandidateScores]
    # matrix[scoring_metric][validation_metric]; None where a column is constant
    matrix: Dict[str, Dict[str, Optional[float]]]


def _score_candidate(g: Graph, truth: Cover, name: str, cover: Cover) -> CandidateScores:
    scores = score_cover(g, cover).as_dict()
    scores.update(validate_covers(truth, cover).model_dump(include=set(VALIDATION_METRICS)))
    return CandidateScores(name=name, scores=scores)


def _cell(xs: Sequence[float], ys: Sequence[float], s: str, v: str) -> Optional[float]:
    if min(xs) == max(xs) or min(ys) == max(ys):
        logger.warning("%s vs %s: every candidate ties, correlation left empty", s, v)
        return None
    return spearman_dense(xs, ys)


def rank_correlation_protocol(
    g: Graph,
    truth: Cover,
    candidates: Sequence[Tuple[str, Cover]],
    jobs: int = 1,
) -> RankCorrelation:
    """
    Score every candidate cover with the five scoring metrics and the three
    validation metrics, then correlate the dense rankings column by column.
    """
    if len(candidates) < 2:
        raise MetricError("rank correlation needs at least two candidate covers")
    scored = run_trials(_score_candidate, [(g, truth, name, cover) for name, cover in candidates], jobs=jobs)
    matrix: Dict[str, Dict[str, Optional[float]]] = {}
    for s in SCORING_METRICS:
        xs = [c.scores[s] for c in scored]
        matrix[s] = {v: _cell(xs, [c.scores[v] for c in scored], s, v) for v in VALIDATION_METRICS}
    logger.info("rank correlation over %d candidates", len(scored))
    return RankCorrelation(candidates=list(scored), matrix=matrix)
