# genperm/backend/experiments/spreading.py
"""
Push-style message spreading.

Rounds are synchronous: every informed vertex picks one uninformed neighbor
uniformly at random (or idles when it has none), and all pushes of a round
land together.
"""
import logging
import math
from typing import Iterable, List, Literal, Sequence

import numpy as np
from pydantic import BaseModel

from genperm.backend.errors import ExperimentError
from genperm.backend.experiments.trials import derive_seeds, run_trials
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph, is_connected
from genperm.backend.metrics.genperm import max_share

logger = logging.getLogger(__name__)

Policy = Literal["random", "degree", "genperm"]
POLICIES = ("random", "degree", "genperm")


class SpreadTrace(BaseModel):
    initiators: List[int]
    steps: int
    # informed_per_step[0] is the initiator count
    informed_per_step: List[int]


def spread(g: Graph, initiators: Iterable[int], seed: int) -> SpreadTrace:
    start = sorted(set(int(v) for v in initiators))
    if not start:
        raise ExperimentError("spreading needs at least one initiator")
    if start[0] < 0 or start[-1] >= g.node_count:
        raise ExperimentError(f"initiators must lie in 0..{g.node_count - 1}")
    if not is_connected(g):
        raise ExperimentError("spreading needs a connected graph")

    rng = np.random.default_rng(seed)
    informed = np.zeros(g.node_count, dtype=bool)
    informed[start] = True
    counts = [len(start)]
    while counts[-1] < g.node_count:
        reached = set()
        for u in np.flatnonzero(informed):
            fresh = [w for w in g.neighbors(int(u)) if not informed[w]]
            if fresh:
                reached.add(fresh[int(rng.integers(len(fresh)))])
        if not reached:
            raise ExperimentError("spreading stalled before informing every vertex")
        informed[list(reached)] = True
        counts.append(int(informed.sum()))
    return SpreadTrace(initiators=start, steps=len(counts) - 1, informed_per_step=counts)


def select_initiators(g: Graph, cover: Cover, policy: Policy, k: int, seed: int) -> List[int]:
    """
    k initiators, sorted by id.

    degree and genperm take the top k (genperm ranks by max_c P_g^c(v));
    ties go to the higher degree, then the lower id.
    """
    n = g.node_count
    if not 1 <= k <= n:
        raise ExperimentError(f"initiator count {k} outside 1..{n}")
    if policy == "random":
        return sorted(int(v) for v in np.random.default_rng(seed).choice(n, size=k, replace=False))

    degrees = g.degrees()
    if policy == "degree":
        ranked = sorted(g.nodes(), key=lambda v: (-degrees[v], v))
    elif policy == "genperm":
        share = max_share(g, cover)
        ranked = sorted(g.nodes(), key=lambda v: (-share[v], -degrees[v], v))
    else:
        raise ExperimentError(f"unknown initiator policy {policy!r}")
    return sorted(ranked[:k])


class SpreadingSummary(BaseModel):
    policy: str
    k: int
    runs: int
    mean_steps: float
    stderr: float


def _policy_run(g: Graph, cover: Cover, policy: str, k: int, seed: int) -> int:
    return spread(g, select_initiators(g, cover, policy, k, seed), seed).steps


def spreading_comparison(
    g: Graph,
    cover: Cover,
    policies: Sequence[str],
    k: int,
    runs: int,
    seed: int,
    jobs: int = 1,
) -> List[SpreadingSummary]:
    """Mean steps to full coverage per initiator policy; every policy sees the same run seeds."""
    if runs < 1:
        raise ExperimentError("spreading comparison needs at least one run")
    seeds = derive_seeds(seed, runs)
    out = []
    for policy in policies:
        if policy not in POLICIES:
            raise ExperimentError(f"unknown initiator policy {policy!r}")
        steps = np.asarray(run_trials(_policy_run, [(g, cover, policy, k, s) for s in seeds], jobs=jobs), dtype=float)
        stderr = float(steps.std(ddof=1) / math.sqrt(runs)) if runs > 1 else 0.0
        out.append(SpreadingSummary(policy=policy, k=k, runs=runs, mean_steps=float(steps.mean()), stderr=stderr))
        logger.info("policy %s: %.3f steps on average over %d runs", policy, out[-1].mean_steps, runs)
    return out
