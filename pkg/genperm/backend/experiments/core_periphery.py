# genperm/backend/experiments/core_periphery.py
"""Core-periphery structure inside a single community."""
import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from scipy.sparse import csgraph

from genperm.backend.errors import ExperimentError
from genperm.backend.experiments.profile import genperm_bin
from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph, induced_subgraph
from genperm.backend.metrics.genperm import genperm_vc

logger = logging.getLogger(__name__)


class FarnessRow(NamedTuple):
    v: int
    farness: float
    genperm: float


@dataclass
class FarnessProfile:
    community: int
    rows: List[FarnessRow]
    # True when the community is disconnected and farness was taken per component
    split: bool


def farness_profile(g: Graph, cover: Cover, c: int, per_component: bool = False) -> FarnessProfile:
    """
    Mean hop distance from each member of c to the other members, inside the
    subgraph c induces, next to the member's P_g^c.

    A member with nobody else reachable gets farness 0.
    """
    members = sorted(cover.community(c))
    sub, id_map = induced_subgraph(g, members)
    dist = csgraph.shortest_path(sub.to_csr(), method="D", directed=False, unweighted=True)
    reachable = np.isfinite(dist)
    split = not reachable.all()
    if split and not per_component:
        raise ExperimentError(f"community {c} induces a disconnected subgraph; use per-component farness")
    if split:
        logger.info("community %d is disconnected; farness taken within each component", c)

    rows = []
    for v in members:
        i = id_map[v]
        others = reachable[i].sum() - 1
        farness = float(dist[i][reachable[i]].sum() / others) if others else 0.0
        rows.append(FarnessRow(v, farness, genperm_vc(g, cover, v, c)))
    return FarnessProfile(c, rows, split)


class AssortativityResult(BaseModel):
    r: Optional[float] = None
    degenerate: bool = False
    edges: int = 0


def attribute_assortativity(g: Graph, members: Sequence[int], attribute: Dict[int, float]) -> AssortativityResult:
    """
    Pearson correlation of `attribute` across the edges between `members`,
    each edge counted in both orientations.
    """
    inside = set(members)
    xs, ys = [], []
    for u in sorted(inside):
        for w in g.neighbors(u):
            if w in inside:
                xs.append(attribute[u])
                ys.append(attribute[w])
    n_edges = len(xs) // 2
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if n_edges == 0 or x.std() == 0.0:
        return AssortativityResult(degenerate=True, edges=n_edges)
    r = float(np.corrcoef(x, y)[0, 1])
    return AssortativityResult(r=min(1.0, max(-1.0, r)), edges=n_edges)


def genperm_assortativity(g: Graph, cover: Cover, c: int) -> AssortativityResult:
    """Assortativity of the 20-bin GenPerm index over community c's internal edges."""
    members = sorted(cover.community(c))
    bins = {v: float(genperm_bin(genperm_vc(g, cover, v, c))) for v in members}
    return attribute_assortativity(g, members, bins)


def degree_assortativity(g: Graph, cover: Cover, c: int) -> AssortativityResult:
    members = sorted(cover.community(c))
    return attribute_assortativity(g, members, {v: float(g.degree(v)) for v in members})
