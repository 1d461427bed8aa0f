from __future__ import annotations

import math

from ..panel import FitResult


def bic(loglik: float, n_groups: int, n_params: int,
        n_individuals: int, n_periods: int) -> float:
    """Return ``-2 loglik + log(N T) P G``."""
    return -2.0 * loglik + math.log(n_individuals * n_periods) * n_params * n_groups

def result_bic(result: FitResult) -> float:
    """BIC of a fit with its realized group count and its own sample size."""
    return -2.0 * result.loglik \
        + math.log(result.n_obs) * result.n_parameters * result.n_groups
