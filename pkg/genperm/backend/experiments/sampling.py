# genperm/backend/experiments/sampling.py
import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np

from genperm.backend.errors import ExperimentError
from genperm.backend.graph.cover import Cover, restrict_cover
from genperm.backend.graph.graph import Graph, induced_subgraph

logger = logging.getLogger(__name__)


@dataclass
class SubnetworkSample:
    graph: Graph
    cover: Cover
    # anchor id inside the sample and in the source graph
    anchor: int
    source_anchor: int
    node_map: Dict[int, int]


def sample_subnetwork(g: Graph, truth: Cover, seed: int, anchor: int | None = None) -> SubnetworkSample:
    """
    Community-centric sample around one overlapping node.

    The anchor is drawn uniformly from the nodes in at least two ground-truth
    communities (or given explicitly); the sample is the subgraph induced by
    every node sharing a community with it, with the ground truth intersected
    down to that node set.
    """
    if anchor is not None and not 0 <= anchor < g.node_count:
        raise ExperimentError(f"anchor {anchor} outside 0..{g.node_count - 1}")
    overlapping = np.flatnonzero(truth.overlap_counts() >= 2)
    if overlapping.size == 0:
        raise ExperimentError("sampling needs a node with at least two community memberships")
    if anchor is None:
        anchor = int(np.random.default_rng(seed).choice(overlapping))
    elif len(truth.membership[anchor]) < 2:
        raise ExperimentError(f"anchor {anchor} belongs to fewer than two communities")

    nodes = set()
    for c in truth.membership[anchor]:
        nodes |= truth.communities[c]
    sub, node_map = induced_subgraph(g, nodes)
    cover = restrict_cover(truth, sub, node_map)
    logger.info("sampled %d nodes, %d edges around anchor %d", sub.node_count, sub.edge_count, anchor)
    return SubnetworkSample(sub, cover, node_map[anchor], anchor, node_map)
