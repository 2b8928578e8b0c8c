# genperm/backend/validate/onmi.py
"""
Overlapping NMI in the max-normalized lack-of-information form.

Each community is a binary membership variable over the nodes. H(X_k | Y) is
the smallest H(X_k | Y_l) over detected communities Y_l that pass the
h(a) + h(d) >= h(b) + h(c) admissibility test (H(X_k) when none does);
I(X:Y) = (H(X) - H(X|Y) + H(Y) - H(Y|X)) / 2 and the score divides I by
max(H(X), H(Y)).
"""
import numpy as np

from genperm.backend.errors import MetricError
from genperm.backend.graph.cover import Cover, incidence_matrix
from genperm.backend.validate._common import check_universe, same_communities

ONMI_VARIANT = "max-normalized lack-of-information"


def _h(counts: np.ndarray, n: int) -> np.ndarray:
    p = np.asarray(counts, dtype=float) / n
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = -p[mask] * np.log2(p[mask])
    return out


def _entropies(sizes: np.ndarray, n: int) -> np.ndarray:
    return _h(sizes, n) + _h(n - sizes, n)


def _conditional(sizes_x: np.ndarray, sizes_y: np.ndarray, inter: np.ndarray, n: int) -> np.ndarray:
    """H(X_k | Y) for every k."""
    d = inter.astype(float)
    c = sizes_x[:, None] - d
    b = sizes_y[None, :] - d
    a = n - sizes_x[:, None] - sizes_y[None, :] + d
    ha, hb, hc, hd = _h(a, n), _h(b, n), _h(c, n), _h(d, n)
    joint = ha + hb + hc + hd
    cond = np.maximum(joint - _entropies(sizes_y, n)[None, :], 0.0)
    admissible = ha + hd >= hb + hc
    fallback = _entropies(sizes_x, n)
    masked = np.where(admissible, cond, np.inf)
    best = masked.min(axis=1) if masked.shape[1] else np.full(len(sizes_x), np.inf)
    return np.where(np.isfinite(best), best, fallback)


def onmi(truth: Cover, detected: Cover) -> float:
    n = check_universe(truth, detected)
    mx = incidence_matrix(truth)
    my = incidence_matrix(detected)
    sizes_x = np.asarray(mx.sum(axis=1)).ravel()
    sizes_y = np.asarray(my.sum(axis=1)).ravel()
    h_x = float(_entropies(sizes_x, n).sum())
    h_y = float(_entropies(sizes_y, n).sum())
    if same_communities(truth, detected):
        return 1.0
    if max(h_x, h_y) == 0.0:
        raise MetricError("ONMI undefined: every community spans the full node set")

    inter = (mx @ my.T).toarray()
    h_x_given_y = float(_conditional(sizes_x, sizes_y, inter, n).sum())
    h_y_given_x = float(_conditional(sizes_y, sizes_x, inter.T, n).sum())
    mutual = 0.5 * (h_x - h_x_given_y + h_y - h_y_given_x)
    return float(min(1.0, max(0.0, mutual / max(h_x, h_y))))
