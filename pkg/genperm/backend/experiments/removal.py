# genperm/backend/experiments/removal.py
"""
Layered node removal.

Every community's P_g^c range is cut into four equal layers, layer 1 holding
its lowest scores (periphery) and layer 4 its highest (core). Removing a share
of one layer and re-detecting shows how much the structure depends on it.
"""
import logging
import math
from typing import Callable, List, Sequence

import numpy as np
from pydantic import BaseModel

from genperm.backend.errors import ExperimentError
from genperm.backend.experiments.trials import derive_seeds, run_trials
from genperm.backend.graph.cover import Cover, restrict_cover
from genperm.backend.graph.graph import Graph, induced_subgraph
from genperm.backend.metrics.genperm import genperm_vc
from genperm.backend.validate.onmi import onmi

logger = logging.getLogger(__name__)

LAYERS = 4
Detector = Callable[[Graph], Cover]


def _layer_of(value: float, lo: float, hi: float) -> int:
    if hi - lo < 1e-12:
        # flat community: place it on the absolute [-1, 1] scale
        lo, hi = -1.0, 1.0
    idx = math.floor((value - lo) / (hi - lo) * LAYERS)
    return min(max(idx, 0), LAYERS - 1)


def community_layers(g: Graph, cover: Cover) -> List[List[int]]:
    """
    Network-wide node lists for layers 1..4.

    A node in several communities can land in several layers.
    """
    layers: List[set] = [set() for _ in range(LAYERS)]
    for c, comm in enumerate(cover.communities):
        members = sorted(comm)
        values = [genperm_vc(g, cover, v, c) for v in members]
        lo, hi = min(values), max(values)
        for v, x in zip(members, values):
            layers[_layer_of(x, lo, hi)].add(v)
    return [sorted(layer) for layer in layers]


class RemovalRow(BaseModel):
    layer: int
    x: float
    removed: int
    mean_onmi: float
    trials: int


def _removal_trial(g: Graph, baseline: Cover, layer: List[int], count: int, detector: Detector, seed: int) -> float:
    rng = np.random.default_rng(seed)
    removed = set(int(v) for v in rng.choice(np.asarray(layer), size=count, replace=False))
    survivors = [v for v in g.nodes() if v not in removed]
    # nodes cut off from everything else cannot be scored
    survivors = [v for v in survivors if any(w not in removed for w in g.neighbors(v))]
    if not survivors:
        raise ExperimentError(f"removing {count} nodes leaves no connected survivor")
    sub, id_map = induced_subgraph(g, survivors)
    detected = detector(sub)
    return onmi(restrict_cover(baseline, sub, id_map), detected)


def layered_removal(
    g: Graph,
    truth: Cover,
    detector: Detector,
    x_grid: Sequence[float],
    trials: int,
    seed: int,
    jobs: int = 1,
) -> List[RemovalRow]:
    """
    Mean ONMI between the baseline detection and detections after removing a
    share x of one layer's nodes.

    Layers come from `truth`; the baseline is `detector(g)` restricted to the
    surviving nodes. Rows are ordered by layer, then by x in grid order.
    """
    if trials < 1:
        raise ExperimentError("layered removal needs at least one trial")
    for x in x_grid:
        if not 0.0 <= x <= 1.0:
            raise ExperimentError(f"removal share {x} outside [0, 1]")

    layers = community_layers(g, truth)
    baseline = detector(g)
    logger.info("layer sizes: %s", [len(layer) for layer in layers])

    cells = []
    for li, layer in enumerate(layers):
        for x in x_grid:
            count = math.ceil(x * len(layer))
            if x > 0.0 and count == 0:
                raise ExperimentError(f"layer {li + 1} is empty; cannot remove {x:.0%} of it")
            cells.append((li, x, count))

    live = [cell for cell in cells if cell[2] > 0]
    seeds = iter(derive_seeds(seed, len(live) * trials))
    arg_sets = [
        (g, baseline, layers[li], count, detector, next(seeds))
        for li, _, count in live
        for _ in range(trials)
    ]
    scores = iter(run_trials(_removal_trial, arg_sets, jobs=jobs))

    rows = []
    for li, x, count in cells:
        if count == 0:
            rows.append(RemovalRow(layer=li + 1, x=x, removed=0, mean_onmi=1.0, trials=0))
            continue
        batch = [next(scores) for _ in range(trials)]
        rows.append(RemovalRow(layer=li + 1, x=x, removed=count, mean_onmi=float(np.mean(batch)), trials=trials))
    return rows
