# genperm/backend/validate/omega.py
from typing import Literal

import numpy as np

from genperm.backend.graph.cover import Cover, incidence_matrix
from genperm.backend.validate._common import check_universe

OmegaVariant = Literal["ordered", "unordered", "adjusted"]


def _co_membership(cover: Cover) -> np.ndarray:
    m = incidence_matrix(cover)
    return (m.T @ m).toarray()


def omega_index(truth: Cover, detected: Cover, variant: OmegaVariant = "ordered") -> float:
    """
    Agreement on how many communities each pair of nodes shares.

    "ordered" averages over all |V|^2 ordered pairs, self-pairs included;
    "unordered" over the pairs u < v; "adjusted" is the unordered agreement
    corrected for chance.
    """
    n = check_universe(truth, detected)
    if n == 0:
        return 1.0
    a = _co_membership(truth)
    b = _co_membership(detected)
    if variant == "ordered":
        return float((a == b).sum()) / (n * n)

    iu = np.triu_indices(n, k=1)
    pa, pb = a[iu], b[iu]
    pairs = len(pa)
    if pairs == 0:
        return 1.0
    observed = float((pa == pb).sum()) / pairs
    if variant == "unordered":
        return observed
    if variant != "adjusted":
        raise ValueError(f"unknown omega variant {variant!r}")

    top = int(max(pa.max(), pb.max())) + 1
    expected = float(np.dot(np.bincount(pa, minlength=top), np.bincount(pb, minlength=top))) / pairs**2
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)
