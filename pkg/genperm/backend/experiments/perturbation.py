# genperm/backend/experiments/perturbation.py
"""
Ground-truth perturbation and the robustness sweep built on it.

Three strategies degrade a cover with a seeded RNG:

- edge: pick an inter-community edge and swap its endpoints' memberships,
  floor(p * |E|) times;
- random: pick two nodes with different memberships and swap them,
  floor(p * |V|) times;
- community: every community exchanges floor(p * |s|) members with as many
  uniformly chosen non-members.

A membership swap exchanges the full community lists of the two nodes.
"""
import logging
import math
from typing import Dict, List, Literal, Sequence, Set

import numpy as np
from pydantic import BaseModel, Field

from genperm.backend.config import DEFAULT_SEED
from genperm.backend.errors import ExperimentError
from genperm.backend.experiments.trials import derive_seeds, run_trials
from genperm.backend.graph.cover import Cover, build_cover
from genperm.backend.graph.graph import Graph
from genperm.backend.metrics.scoring import SCORING_METRICS, score_cover

logger = logging.getLogger(__name__)

Strategy = Literal["edge", "random", "community"]
STRATEGIES = ("edge", "random", "community")
MAX_ATTEMPTS_PER_SWAP = 100


class PerturbationSpec(BaseModel):
    strategy: Strategy
    p: float = Field(gt=0.0, le=0.5)
    seed: int = DEFAULT_SEED


def _from_membership(g: Graph, n_communities: int, memb: List[frozenset]) -> Cover:
    groups: List[Set[int]] = [set() for _ in range(n_communities)]
    for v, cs in enumerate(memb):
        for c in cs:
            groups[c].add(v)
    # swaps keep every community size, so nothing is emptied or collapsed
    return Cover(g, tuple(frozenset(s) for s in groups))


def _swap(memb: List[frozenset], u: int, v: int) -> None:
    memb[u], memb[v] = memb[v], memb[u]


def _perturb_edges(g: Graph, truth: Cover, target: int, rng: np.random.Generator) -> Cover:
    memb = [truth.membership_set(v) for v in g.nodes()]
    pool = [i for i, (u, v) in enumerate(g.edges) if memb[u] != memb[v]]
    if not pool:
        raise ExperimentError("edge perturbation needs at least one inter-community edge")
    in_pool = set(pool)

    swaps = attempts = 0
    budget = MAX_ATTEMPTS_PER_SWAP * target
    while swaps < target:
        if attempts >= budget or not pool:
            raise ExperimentError(f"no inter-community edge left after {attempts} attempts ({swaps}/{target} swaps)")
        attempts += 1
        k = int(rng.integers(len(pool)))
        u, v = g.edges[pool[k]]
        if memb[u] == memb[v]:
            # stale entry: drop it in place
            in_pool.discard(pool[k])
            pool[k] = pool[-1]
            pool.pop()
            continue
        _swap(memb, u, v)
        swaps += 1
        for a in (u, v):
            for b in g.neighbors(a):
                eid = g.edge_id(a, b)
                if eid not in in_pool and memb[a] != memb[b]:
                    in_pool.add(eid)
                    pool.append(eid)
    return _from_membership(g, len(truth), memb)


def _perturb_random(g: Graph, truth: Cover, target: int, rng: np.random.Generator) -> Cover:
    memb = [truth.membership_set(v) for v in g.nodes()]
    n = g.node_count
    if n < 2 or len(set(memb)) < 2:
        raise ExperimentError("random perturbation needs two nodes with different memberships")

    swaps = attempts = 0
    budget = MAX_ATTEMPTS_PER_SWAP * target
    while swaps < target:
        if attempts >= budget:
            raise ExperimentError(f"no swappable node pair after {attempts} attempts ({swaps}/{target} swaps)")
        attempts += 1
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        if memb[u] == memb[v]:
            continue
        _swap(memb, u, v)
        swaps += 1
    return _from_membership(g, len(truth), memb)


def _perturb_communities(g: Graph, truth: Cover, p: float, rng: np.random.Generator) -> Cover:
    n = g.node_count
    communities = [set(c) for c in truth.communities]
    for cid, comm in enumerate(communities):
        k = math.floor(p * len(comm))
        if k == 0:
            continue
        outside = np.setdiff1d(np.arange(n), np.fromiter(comm, dtype=np.int64))
        if outside.size < k:
            raise ExperimentError(f"community {cid} has {outside.size} non-members, needs {k} for an exchange")
        leaving = rng.choice(np.array(sorted(comm)), size=k, replace=False)
        joining = rng.choice(outside, size=k, replace=False)
        comm.difference_update(int(v) for v in leaving)
        comm.update(int(v) for v in joining)
    return build_cover(g, communities)


def perturb(g: Graph, truth: Cover, spec: PerturbationSpec) -> Cover:
    """A perturbed copy of `truth`; the input cover is left untouched."""
    if truth.node_count != g.node_count:
        raise ExperimentError(f"cover spans {truth.node_count} nodes, graph has {g.node_count}")
    rng = np.random.default_rng(spec.seed)
    if spec.strategy == "community":
        return _perturb_communities(g, truth, spec.p, rng)

    base = g.edge_count if spec.strategy == "edge" else g.node_count
    target = math.floor(spec.p * base)
    if target == 0:
        logger.info("%s perturbation at p=%g rounds to zero swaps", spec.strategy, spec.p)
        return Cover(g, truth.communities)
    if spec.strategy == "edge":
        return _perturb_edges(g, truth, target, rng)
    return _perturb_random(g, truth, target, rng)


# -----------------------------
# Robustness sweep
# -----------------------------
class SweepRow(BaseModel):
    strategy: str
    p: float
    trials: int
    # per-metric mean, divided by the strategy's largest mean
    normalized: Dict[str, float]
    raw: Dict[str, float]


def _scored_trial(g: Graph, truth: Cover, spec: PerturbationSpec) -> Dict[str, float]:
    return score_cover(g, perturb(g, truth, spec)).as_dict()


def _normalize(rows: List[SweepRow]) -> None:
    for metric in SCORING_METRICS:
        values = [r.raw[metric] for r in rows]
        scale = max(values)
        if scale <= 0.0:
            scale = max(abs(x) for x in values)
        if scale == 0.0:
            logger.warning("metric %s is zero over the whole sweep; left unscaled", metric)
            scale = 1.0
        for r in rows:
            r.normalized[metric] = r.raw[metric] / scale


def robustness_sweep(
    g: Graph,
    truth: Cover,
    strategies: Sequence[str],
    p_grid: Sequence[float],
    trials: int,
    seed: int = DEFAULT_SEED,
    jobs: int = 1,
) -> List[SweepRow]:
    """
    Mean scoring metrics of perturbed ground truths.

    One row per (strategy, p) in input order. p = 0 scores the ground truth
    itself. Each metric is normalized by its largest mean within the strategy.
    """
    if trials < 1:
        raise ExperimentError("robustness sweep needs at least one trial")
    for s in strategies:
        if s not in STRATEGIES:
            raise ExperimentError(f"unknown perturbation strategy {s!r}")
    for p in p_grid:
        if not 0.0 <= p <= 0.5:
            raise ExperimentError(f"perturbation intensity {p} outside [0, 0.5]")

    baseline = score_cover(g, truth).as_dict()
    cells = [(s, p) for s in strategies for p in p_grid if p > 0.0]
    seeds = iter(derive_seeds(seed, len(cells) * trials))
    arg_sets = []
    for s, p in cells:
        for _ in range(trials):
            arg_sets.append((g, truth, PerturbationSpec(strategy=s, p=p, seed=next(seeds))))
    logger.info("robustness sweep: %d strategies x %d intensities x %d trials", len(strategies), len(p_grid), trials)
    scored = iter(run_trials(_scored_trial, arg_sets, jobs=jobs))

    means: Dict[tuple, Dict[str, float]] = {}
    for cell in cells:
        batch = [next(scored) for _ in range(trials)]
        means[cell] = {m: float(np.mean([b[m] for b in batch])) for m in SCORING_METRICS}

    rows: List[SweepRow] = []
    for s in strategies:
        block = []
        for p in p_grid:
            raw = baseline if p == 0.0 else means[(s, p)]
            block.append(SweepRow(strategy=s, p=p, trials=trials if p > 0.0 else 1, normalized={}, raw=dict(raw)))
        _normalize(block)
        rows.extend(block)
    return rows
