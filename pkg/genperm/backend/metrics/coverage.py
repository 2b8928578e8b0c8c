# genperm/backend/metrics/coverage.py
from genperm.backend.graph.cover import Cover

# communities smaller than this are ignored by CC and OC
MIN_COMMUNITY_SIZE = 3


def community_coverage(cover: Cover) -> float:
    """CC: fraction of nodes in at least one community of size >= 3."""
    if cover.node_count == 0:
        return 0.0
    covered = set()
    for comm in cover.communities:
        if len(comm) >= MIN_COMMUNITY_SIZE:
            covered |= comm
    return len(covered) / cover.node_count


def overlap_coverage(cover: Cover) -> float:
    """OC: mean number of size >= 3 communities per node, over all nodes."""
    if cover.node_count == 0:
        return 0.0
    memberships = sum(len(c) for c in cover.communities if len(c) >= MIN_COMMUNITY_SIZE)
    return memberships / cover.node_count
