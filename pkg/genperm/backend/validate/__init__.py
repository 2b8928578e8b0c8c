from genperm.backend.validate.fscore import fscore
from genperm.backend.validate.omega import omega_index
from genperm.backend.validate.onmi import ONMI_VARIANT, onmi
from genperm.backend.validate.ranking import (
    CandidateScores,
    RankCorrelation,
    dense_rank,
    rank_correlation_protocol,
    spearman_dense,
)
from genperm.backend.validate.report import (
    VALIDATION_METRICS,
    ValidationReport,
    composite_performance,
    validate_covers,
)

__all__ = [
    "ONMI_VARIANT",
    "VALIDATION_METRICS",
    "CandidateScores",
    "RankCorrelation",
    "ValidationReport",
    "composite_performance",
    "dense_rank",
    "fscore",
    "omega_index",
    "onmi",
    "rank_correlation_protocol",
    "spearman_dense",
    "validate_covers",
]
