from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..distribution import gev, gp
from ..regression import Family, GroupCoefficients, LinkSpec, param_arrays
from ..utils import validate_probability
from .data import GroupAssignment, PanelData
from .likelihood import check_dimensions


def conditional_quantiles(data: PanelData,
                          coeffs: Sequence[GroupCoefficients],
                          assignment: GroupAssignment,
                          spec: LinkSpec,
                          prob: float) -> np.ndarray:
    """Fitted conditional ``prob``-quantile of every cell.

    Cells whose covariates are not finite, or whose linked scale is not
    positive, are NaN.

    Raises:
        DomainError: If ``prob`` is outside (0, 1).
    """
    prob = validate_probability(prob, 'probability')
    check_dimensions(data, coeffs, assignment, spec)
    result = np.full(data.y.shape, np.nan)
    finite = np.all(np.isfinite(data.x), axis=2)
    x = np.where(finite[..., None], data.x, 0.0)
    for group, group_coeffs in enumerate(coeffs, start=1):
        rows = assignment.members(group)
        params = param_arrays(group_coeffs, x[rows], spec)
        with np.errstate(all='ignore'):
            if spec.family is Family.GP:
                values = gp.quantile(prob, params['sigma'], params['xi'])
            else:
                values = gev.quantile(prob, params['mu'], params['sigma'], params['xi'])
        valid = finite[rows] & (params['sigma'] > 0)
        result[rows] = np.where(valid, values, np.nan)
    return result

def exceedance_rates(data: PanelData,
                     coeffs: Sequence[GroupCoefficients],
                     assignment: GroupAssignment,
                     spec: LinkSpec,
                     p: float) -> np.ndarray:
    """Fraction of each individual's observed periods above the fitted
    conditional ``p``-quantile. Individuals without observations get NaN."""
    quantiles = conditional_quantiles(data, coeffs, assignment, spec, p)
    above = np.where(data.mask, data.y > quantiles, False)
    counts = data.mask.sum(axis=1)
    with np.errstate(invalid='ignore', divide='ignore'):
        return np.where(counts > 0, above.sum(axis=1) / counts, np.nan)
