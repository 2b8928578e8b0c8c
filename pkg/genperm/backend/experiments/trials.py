# genperm/backend/experiments/trials.py
import logging
from typing import Callable, List, Sequence, TypeVar

import numpy as np
from joblib import Parallel, delayed

logger = logging.getLogger(__name__)

T = TypeVar("T")


def derive_seeds(base_seed: int, count: int) -> List[int]:
    """Independent child seeds of `base_seed`, stable across runs and job counts."""
    children = np.random.SeedSequence(base_seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in children]


def run_trials(fn: Callable[..., T], arg_sets: Sequence[tuple], jobs: int = 1) -> List[T]:
    """
    Evaluate fn(*args) for every entry of `arg_sets`, in order.

    jobs > 1 fans out with joblib; results keep input order, so outputs do not
    depend on the job count.
    """
    if jobs == 1 or len(arg_sets) <= 1:
        return [fn(*args) for args in arg_sets]
    logger.info("running %d trials on %d jobs", len(arg_sets), jobs)
    return Parallel(n_jobs=jobs)(delayed(fn)(*args) for args in arg_sets)
