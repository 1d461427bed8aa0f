"""Score, Hessian and clustered sandwich covariance of grouped panel fits."""
from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np

from ..regression import GroupCoefficients, LinkSpec
from ..utils import ConfigError, LikelihoodError, NumericalRankError
from .data import GroupAssignment, PanelData
from .likelihood import (
    cell_loglik,
    cell_scores,
    check_dimensions,
    period_scores,
    summed_scores,
)

logger = logging.getLogger(__name__)

CONDITION_LIMIT = 1e12


def _steps(theta: np.ndarray, fd_step: float) -> np.ndarray:
    return fd_step * (1.0 + np.abs(theta))

def score_vector(data: PanelData,
                 coeffs: Sequence[GroupCoefficients],
                 assignment: GroupAssignment,
                 spec: LinkSpec,
                 i: int,
                 t: int,
                 method: str = 'analytic',
                 fd_step: float = 1e-5) -> np.ndarray:
    """Gradient of the log-likelihood of cell (i, t) with respect to the
    flattened coefficients of individual i's group.

    Args:
        method: ``'analytic'`` or ``'numeric'`` (central differences with
            step ``fd_step * (1 + |theta_j|)``).

    Raises:
        ConfigError: If the cell is missing or ``method`` is unknown.
        LikelihoodError: If the cell lies outside the support.
    """
    check_dimensions(data, coeffs, assignment, spec)
    if not data.mask[i, t]:
        raise ConfigError(f"cell ({i}, {t}) is missing")
    group_coeffs = coeffs[assignment.tau[i] - 1]
    if not np.isfinite(cell_loglik(data, group_coeffs, spec, [i])[0, t]):
        raise LikelihoodError(f"cell ({i}, {t}) lies outside the support")
    if method == 'analytic':
        return cell_scores(data, group_coeffs, spec, [i])[0, t]
    if method != 'numeric':
        raise ConfigError(f"unknown score method {method!r}")

    theta = group_coeffs.flatten()
    steps = _steps(theta, fd_step)
    gradient = np.empty_like(theta)
    for j, step in enumerate(steps):
        shift = np.zeros_like(theta)
        shift[j] = step
        upper = GroupCoefficients.from_flat(theta + shift, spec)
        lower = GroupCoefficients.from_flat(theta - shift, spec)
        gradient[j] = (
            cell_loglik(data, upper, spec, [i])[0, t]
            - cell_loglik(data, lower, spec, [i])[0, t]
        ) / (2.0 * step)
    return gradient

def hessian(data: PanelData, members: Sequence[int], coeffs: GroupCoefficients,
            spec: LinkSpec, fd_step: float = 1e-5) -> np.ndarray:
    """Observed Hessian of a group's log-likelihood.

    Central differences of the summed analytic scores, symmetrized.

    Raises:
        LikelihoodError: If a perturbed point leaves the support.
    """
    theta = coeffs.flatten()
    steps = _steps(theta, fd_step)
    columns = []
    for j, step in enumerate(steps):
        shift = np.zeros_like(theta)
        shift[j] = step
        upper = summed_scores(
            data, members, GroupCoefficients.from_flat(theta + shift, spec), spec
        )
        lower = summed_scores(
            data, members, GroupCoefficients.from_flat(theta - shift, spec), spec
        )
        columns.append((upper - lower) / (2.0 * step))
    matrix = np.stack(columns, axis=1)
    if not np.all(np.isfinite(matrix)):
        raise LikelihoodError("Hessian evaluation left the support")
    return 0.5 * (matrix + matrix.T)

def _checked_inverse(matrix: np.ndarray) -> np.ndarray:
    condition = float(np.linalg.cond(matrix))
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise NumericalRankError(
            "Hessian is numerically singular",
            condition=condition,
        )
    return np.linalg.inv(matrix)

def group_sandwich(data: PanelData, members: Sequence[int],
                   coeffs: GroupCoefficients, spec: LinkSpec,
                   fd_step: float = 1e-5) -> tuple:
    """Return ``(sandwich, inverse_hessian)`` covariances of one group.

    Scores are summed over members within each period before the outer
    product, so dependence across individuals in a period is allowed.
    Periods without any observed member cell are left out.

    Raises:
        NumericalRankError: If the Hessian is singular.
    """
    members = np.asarray(members, dtype=int)
    observed = data.mask[members].any(axis=0)
    scores = period_scores(data, members, coeffs, spec)[observed]
    if not np.all(np.isfinite(scores)):
        raise LikelihoodError("scores evaluated outside the support")
    meat = scores.T @ scores
    bread = _checked_inverse(hessian(data, members, coeffs, spec, fd_step))
    sandwich = bread @ meat @ bread
    return 0.5 * (sandwich + sandwich.T), -bread

def sandwich_covariance(data: PanelData,
                        coeffs: Sequence[GroupCoefficients],
                        assignment: GroupAssignment,
                        spec: LinkSpec,
                        fd_step: float = 1e-5) -> list[np.ndarray]:
    """Clustered sandwich covariance ``H^-1 V H^-1`` of every group.

    Cross-group covariance is zero and not returned.

    Raises:
        NumericalRankError: If the Hessian of a group is singular.
    """
    check_dimensions(data, coeffs, assignment, spec)
    return [
        group_sandwich(data, assignment.members(g), c, spec, fd_step)[0]
        for g, c in enumerate(coeffs, start=1)
    ]

def inverse_hessian_covariance(data: PanelData,
                               coeffs: Sequence[GroupCoefficients],
                               assignment: GroupAssignment,
                               spec: LinkSpec,
                               fd_step: float = 1e-5) -> list[np.ndarray]:
    """Model-based covariance ``-H^-1`` of every group."""
    check_dimensions(data, coeffs, assignment, spec)
    result = []
    for g, c in enumerate(coeffs, start=1):
        matrix = -_checked_inverse(
            hessian(data, assignment.members(g), c, spec, fd_step)
        )
        result.append(0.5 * (matrix + matrix.T))
    return result
