# genperm/backend/synth/planted.py
import logging
from typing import List, Sequence, Tuple

import numpy as np

from genperm.backend.errors import SynthError
from genperm.backend.graph.cover import Cover, build_cover
from genperm.backend.graph.graph import Graph, build_graph, connected_components

logger = logging.getLogger(__name__)


def _check_probability(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise SynthError(f"{name} must lie in [0, 1], got {p}")


def gen_planted_overlap(
    blocks: Sequence[int],
    overlap_fraction: float,
    p_in: float,
    p_out: float,
    seed: int,
) -> Tuple[Graph, Cover]:
    """
    Planted block communities with overlapping nodes.

    Nodes get contiguous ids block by block. A seeded round(overlap_fraction * n)
    of them also join the next block (wrapping around), then every node pair
    is linked independently with p_in when the two share a block and p_out
    otherwise.

    Args:
        blocks: block sizes, each at least 1
        overlap_fraction: share of nodes placed in two adjacent blocks
        p_in: within-community edge probability
        p_out: across-community edge probability, strictly below p_in
        seed: RNG seed; equal seeds give identical graphs
    """
    if not blocks or min(blocks) < 1:
        raise SynthError("planted graphs need at least one non-empty block")
    _check_probability("p_in", p_in)
    _check_probability("p_out", p_out)
    _check_probability("overlap_fraction", overlap_fraction)
    if p_in <= p_out:
        raise SynthError(f"p_in ({p_in}) must exceed p_out ({p_out})")

    rng = np.random.default_rng(seed)
    n = int(sum(blocks))
    n_blocks = len(blocks)
    home = np.repeat(np.arange(n_blocks), blocks)
    incidence = np.zeros((n, n_blocks), dtype=bool)
    incidence[np.arange(n), home] = True

    n_overlap = int(round(overlap_fraction * n)) if n_blocks > 1 else 0
    if n_overlap:
        chosen = np.sort(rng.choice(n, size=n_overlap, replace=False))
        incidence[chosen, (home[chosen] + 1) % n_blocks] = True

    shared = (incidence.astype(np.int64) @ incidence.T.astype(np.int64)) > 0
    iu, ju = np.triu_indices(n, k=1)
    prob = np.where(shared[iu, ju], p_in, p_out)
    keep = rng.random(iu.size) < prob
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))

    g = build_graph(edges, node_count_hint=n)
    communities: List[List[int]] = [np.flatnonzero(incidence[:, b]).tolist() for b in range(n_blocks)]
    cover = build_cover(g, communities)

    isolated = int((g.degrees() == 0).sum())
    n_comp = int(connected_components(g).max()) + 1 if n else 0
    if isolated or n_comp > 1:
        logger.warning(
            "planted graph is disconnected: %d components, %d isolated nodes (p_in %.3g, p_out %.3g)",
            n_comp, isolated, p_in, p_out,
        )
    logger.info("planted graph: %d nodes, %d edges, %d overlapping nodes", n, g.edge_count, n_overlap)
    return g, cover
