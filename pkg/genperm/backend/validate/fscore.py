# genperm/backend/validate/fscore.py
import numpy as np

from genperm.backend.errors import MetricError
from genperm.backend.graph.cover import Cover, incidence_matrix
from genperm.backend.validate._common import check_universe


def fscore(truth: Cover, detected: Cover) -> float:
    """
    Two-sided best-match F-Score.

    Averages, over truth communities, the F of each one's best detected match
    and, over detected communities, the F of each one's best truth match, then
    takes the mean of the two averages.
    """
    check_universe(truth, detected)
    if len(truth) == 0 or len(detected) == 0:
        raise MetricError("F-Score needs non-empty covers")
    mt = incidence_matrix(truth)
    md = incidence_matrix(detected)
    inter = (mt @ md.T).toarray().astype(float)
    size_t = np.asarray(mt.sum(axis=1), dtype=float).ravel()
    size_d = np.asarray(md.sum(axis=1), dtype=float).ravel()
    # harmonic mean of |T∩D|/|D| and |T∩D|/|T|
    f = 2.0 * inter / (size_t[:, None] + size_d[None, :])
    return 0.5 * (float(f.max(axis=1).mean()) + float(f.max(axis=0).mean()))
