# genperm/backend/experiments/profile.py
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from genperm.backend.graph.cover import Cover
from genperm.backend.graph.graph import Graph
from genperm.backend.metrics.genperm import genperm_value, vertex_contexts

GENPERM_BINS = 20


def genperm_bin(value: float, bins: int = GENPERM_BINS) -> int:
    """0-based bin of a P_g^c value; bins split [-1, 1] evenly, the last one closed at 1."""
    idx = math.floor((value + 1.0) * bins / 2.0 + 1e-9)
    return min(max(idx, 0), bins - 1)


class BinnedProfile(BaseModel):
    edges: List[float]
    counts: List[int]
    fraction: List[float]
    # per-bin means, None for empty bins
    mean_overlap: List[Optional[float]]
    mean_internal_c: List[Optional[float]]
    mean_c_in: List[Optional[float]]
    mean_degree: List[Optional[float]]
    pairs: int


def _bin_means(bins: np.ndarray, values: np.ndarray, counts: np.ndarray) -> List[Optional[float]]:
    sums = np.bincount(bins, weights=values, minlength=GENPERM_BINS)
    return [float(s / c) if c else None for s, c in zip(sums, counts)]


def binned_profile(g: Graph, cover: Cover) -> BinnedProfile:
    """
    Distribution of every (vertex, community) share over the GenPerm bins.

    Args:
        g: the graph
        cover: any cover of g

    I^c is normalized by its maximum over all pairs before averaging.
    """
    values, overlap, internal_c, c_in, degree = [], [], [], [], []
    for v in g.nodes():
        o = len(cover.membership[v])
        for ctx in vertex_contexts(g, cover, v):
            values.append(genperm_value(ctx.internal_c, ctx.internal, ctx.e_max, ctx.degree, ctx.c_in))
            overlap.append(o)
            internal_c.append(ctx.internal_c)
            c_in.append(ctx.c_in)
            degree.append(ctx.degree)

    bins = np.array([genperm_bin(x) for x in values], dtype=np.int64)
    counts = np.bincount(bins, minlength=GENPERM_BINS)
    total = int(counts.sum())
    i_c = np.asarray(internal_c, dtype=float)
    if i_c.size and i_c.max() > 0:
        i_c = i_c / i_c.max()

    return BinnedProfile(
        edges=[-1.0 + 2.0 * i / GENPERM_BINS for i in range(GENPERM_BINS + 1)],
        counts=counts.tolist(),
        fraction=[float(c / total) if total else 0.0 for c in counts],
        mean_overlap=_bin_means(bins, np.asarray(overlap, dtype=float), counts),
        mean_internal_c=_bin_means(bins, i_c, counts),
        mean_c_in=_bin_means(bins, np.asarray(c_in, dtype=float), counts),
        mean_degree=_bin_means(bins, np.asarray(degree, dtype=float), counts),
        pairs=total,
    )
