from __future__ import annotations

import warnings
from collections.abc import Sequence

import numpy as np
from sklearn.metrics import rand_score

from ..panel import GroupAssignment
from ..utils import ConfigError


def _labels(assignment: GroupAssignment | Sequence[int]) -> np.ndarray:
    if isinstance(assignment, GroupAssignment):
        return assignment.tau
    return np.asarray(assignment)

def rand_index(a: GroupAssignment | Sequence[int],
               b: GroupAssignment | Sequence[int]) -> float:
    """Fraction of unordered pairs on which two partitions agree.

    Raises:
        ConfigError: If the partitions have different lengths.
    """
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape:
        raise ConfigError(f"partitions of length {len(a)} and {len(b)}")
    return float(rand_score(a, b))

def mrae(true_q: np.ndarray, est_q: np.ndarray) -> float:
    """Mean relative absolute error of estimated quantiles.

    Cells where either value is NaN are skipped. Cells with a zero true
    value are skipped with a warning.

    Raises:
        ConfigError: If the shapes differ.
    """
    true_q = np.asarray(true_q, dtype=float)
    est_q = np.asarray(est_q, dtype=float)
    if true_q.shape != est_q.shape:
        raise ConfigError(f"shapes {true_q.shape} and {est_q.shape} differ")
    usable = ~(np.isnan(true_q) | np.isnan(est_q))
    zero = usable & (true_q == 0)
    if np.any(zero):
        warnings.warn(
            f"{int(zero.sum())} cell(s) with a zero true quantile excluded",
            UserWarning, stacklevel=2,
        )
    usable &= ~zero
    if not np.any(usable):
        return float('nan')
    return float(np.mean(np.abs(est_q[usable] - true_q[usable]) / np.abs(true_q[usable])))

def exceedance_summary(rates: np.ndarray) -> dict:
    """Five-number summary of per-individual exceedance rates (NaN ignored)."""
    rates = np.asarray(rates, dtype=float)
    q = np.nanquantile(rates, [0.0, 0.25, 0.5, 0.75, 1.0])
    return dict(zip(('min', 'q1', 'median', 'q3', 'max'), map(float, q)))
