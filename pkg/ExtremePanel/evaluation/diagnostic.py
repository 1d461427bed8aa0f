from __future__ import annotations

import numpy as np

from ..distribution import gev, gp
from ..panel import FitResult, PanelData
from ..regression import Family, LinkSpec, param_arrays


def gumbel_residuals(data: PanelData, result: FitResult, spec: LinkSpec) -> np.ndarray:
    """Probability-integral residuals on the standard Gumbel scale.

    Each observed cell maps to ``-log(-log F(y))`` under its group's fitted
    distribution; missing cells are NaN. Under a correct model the
    residuals are standard Gumbel for GEV and GP panels alike.
    """
    y, x, mask = data.observed_inputs()
    probs = np.full(y.shape, np.nan)
    for group, coeffs in enumerate(result.coefficients, start=1):
        rows = result.assignment.members(group)
        params = param_arrays(coeffs, x[rows], spec)
        if spec.family is Family.GP:
            probs[rows] = gp.cdf(y[rows], params['sigma'], params['xi'])
        else:
            probs[rows] = gev.cdf(y[rows], params['mu'], params['sigma'], params['xi'])
    with np.errstate(divide='ignore'):
        residuals = -np.log(-np.log(probs))
    return np.where(mask, residuals, np.nan)

def qq_points(residuals: np.ndarray) -> tuple:
    """Standard Gumbel quantile-quantile pairs for finite residuals.

    Plotting positions are ``i / (n + 1)``.

    Returns:
        ``(theoretical, empirical)`` sorted arrays.
    """
    values = np.sort(residuals[np.isfinite(residuals)])
    positions = np.arange(1, len(values) + 1) / (len(values) + 1)
    return -np.log(-np.log(positions)), values
