from genperm.backend.detect.max_genperm import DetectConfig, DetectionResult, detect_cover, max_genperm
from genperm.backend.detect.constant import OrderingReport, constant_communities, ordering_runs

__all__ = [
    "DetectConfig",
    "DetectionResult",
    "OrderingReport",
    "constant_communities",
    "detect_cover",
    "max_genperm",
    "ordering_runs",
]
