# genperm/backend/detect/constant.py
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as sparse_components

from genperm.backend.errors import DetectionError
from genperm.backend.experiments.trials import derive_seeds, run_trials
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph
from genperm.backend.detect.max_genperm import DetectConfig, DetectionResult, max_genperm

logger = logging.getLogger(__name__)


def constant_communities(runs: Sequence[Cover]) -> Tuple[List[List[int]], float]:
    """
    Vertex groups that every run keeps together.

    u ~ v when u and v share a community in every run; the groups are the
    connected components of that relation and phi = groups / nodes.
    """
    if len(runs) < 2:
        raise DetectionError("constant communities need at least two runs")
    n = runs[0].node_count
    if any(r.node_count != n for r in runs):
        raise DetectionError("runs cover different node sets")
    if n == 0:
        return [], 0.0

    first, rest = runs[0], runs[1:]
    pairs = set()
    for comm in first.communities:
        for u, v in combinations(sorted(comm), 2):
            if (u, v) in pairs:
                continue
            if all(r.membership_set(u) & r.membership_set(v) for r in rest):
                pairs.add((u, v))

    if pairs:
        rows, cols = np.array(sorted(pairs), dtype=np.int64).T
    else:
        rows = cols = np.empty(0, dtype=np.int64)
    relation = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = sparse_components(relation, directed=False)

    groups: dict = {}
    for v, label in enumerate(labels):
        groups.setdefault(int(label), []).append(v)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    return ordered, len(ordered) / n


@dataclass
class OrderingReport:
    results: List[DetectionResult]
    seeds: List[int]
    groups: List[List[int]]
    phi: float


def _shuffled_run(g: Graph, cfg: DetectConfig, seed: int) -> DetectionResult:
    return max_genperm(g, cfg.model_copy(update={"ordering": "shuffle", "seed": seed}))


def ordering_runs(g: Graph, runs: int, seed: int, cfg: DetectConfig | None = None, jobs: int = 1) -> OrderingReport:
    """Run MaxGenPerm under `runs` seeded vertex orderings and measure constant communities."""
    if runs < 2:
        raise DetectionError("ordering experiment needs at least two runs")
    cfg = cfg or DetectConfig()
    seeds = derive_seeds(seed, runs)
    results = run_trials(_shuffled_run, [(g, cfg, s) for s in seeds], jobs=jobs)
    groups, phi = constant_communities([r.cover for r in results])
    logger.info("%d orderings: %d constant communities, phi %.4f", runs, len(groups), phi)
    return OrderingReport(results=results, seeds=seeds, groups=groups, phi=phi)
