from genperm.backend.errors import MetricError
from genperm.backend.graph.cover import Cover


def check_universe(truth: Cover, detected: Cover) -> int:
    if truth.node_count != detected.node_count:
        raise MetricError(f"covers span {truth.node_count} and {detected.node_count} nodes")
    return truth.node_count


def same_communities(a: Cover, b: Cover) -> bool:
    return set(a.communities) == set(b.communities)
