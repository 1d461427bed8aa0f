"""Vectorized grouped panel log-likelihoods and their coefficient scores."""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..distribution import gev, gp
from ..regression import Family, GroupCoefficients, LinkSpec, linear_predictors
from ..utils import ConfigError
from .data import GroupAssignment, PanelData


def check_dimensions(data: PanelData, coeffs: Sequence[GroupCoefficients],
                     assignment: GroupAssignment | None,
                     spec: LinkSpec) -> None:
    """Raise :class:`ConfigError` if data, coefficients and assignment disagree."""
    spec.check_columns(data.n_covariates)
    for group_coeffs in coeffs:
        group_coeffs.check(spec)
    if assignment is None:
        return
    if len(assignment) != data.n_individuals:
        raise ConfigError(
            f"assignment has {len(assignment)} entries for "
            f"{data.n_individuals} individuals"
        )
    if assignment.n_groups != len(coeffs):
        raise ConfigError(
            f"{len(coeffs)} coefficient set(s) for {assignment.n_groups} group(s)"
        )

def _linked(coeffs: GroupCoefficients, x: np.ndarray, spec: LinkSpec) -> tuple:
    eta = linear_predictors(coeffs, x, spec)
    with np.errstate(over='ignore', invalid='ignore'):
        params = {
            name: spec.get_link(name).apply(value) for name, value in eta.items()
        }
    valid = params['sigma'] > 0
    for value in params.values():
        valid &= np.isfinite(value)
    return eta, params, valid

def cell_loglik(data: PanelData, coeffs: GroupCoefficients, spec: LinkSpec,
                individuals: Sequence[int] | None = None) -> np.ndarray:
    """Per-cell log-likelihood of ``individuals`` under one group's coefficients.

    Returns:
        Array of shape (n, T): 0 on missing cells, ``-inf`` on observed
        cells off the support or with an invalid linked scale.
    """
    y, x, mask = data.observed_inputs(individuals)
    _, params, valid = _linked(coeffs, x, spec)
    sigma = np.where(valid, params['sigma'], 1.0)
    xi = np.where(valid, params['xi'], 0.0)
    if spec.family is Family.GP:
        value = gp.logpdf(y, sigma, xi)
    else:
        value = gev.logpdf(y, np.where(valid, params['mu'], 0.0), sigma, xi)
    value = np.where(valid, value, -np.inf)
    return np.where(mask, value, 0.0)

def group_loglik(data: PanelData, members: Sequence[int],
                 coeffs: GroupCoefficients, spec: LinkSpec) -> float:
    """Summed log-likelihood of ``members`` under ``coeffs``.

    Only observed cells enter the sum, so adding missing cells leaves the
    value unchanged to the last bit.
    """
    if len(members) == 0:
        return 0.0
    values = cell_loglik(data, coeffs, spec, members)
    return float(values[data.mask[np.asarray(members, dtype=int)]].sum())

def individual_loglik_matrix(data: PanelData,
                             coeffs: Sequence[GroupCoefficients],
                             spec: LinkSpec) -> np.ndarray:
    """Return the N×G matrix of per-individual log-likelihoods by group."""
    check_dimensions(data, coeffs, None, spec)
    columns = []
    for group_coeffs in coeffs:
        values = cell_loglik(data, group_coeffs, spec)
        columns.append(np.array([
            row[observed].sum() for row, observed in zip(values, data.mask)
        ]))
    return np.stack(columns, axis=1)

def in_support_counts(data: PanelData, coeffs: Sequence[GroupCoefficients],
                      spec: LinkSpec) -> np.ndarray:
    """Return the N×G matrix counting observed cells with finite log-likelihood."""
    columns = [
        (np.isfinite(cell_loglik(data, c, spec)) & data.mask).sum(axis=1)
        for c in coeffs
    ]
    return np.stack(columns, axis=1)

def panel_loglik(data: PanelData, coeffs: Sequence[GroupCoefficients],
                 assignment: GroupAssignment, spec: LinkSpec) -> float:
    """Grouped panel log-likelihood; missing cells are skipped.

    Returns:
        The total, ``-inf`` if any observed cell is off its group's support.

    Raises:
        ConfigError: On dimension mismatches.
    """
    check_dimensions(data, coeffs, assignment, spec)
    total = 0.0
    for group, group_coeffs in enumerate(coeffs, start=1):
        total += group_loglik(data, assignment.members(group), group_coeffs, spec)
    return total

def cell_scores(data: PanelData, coeffs: GroupCoefficients, spec: LinkSpec,
                individuals: Sequence[int] | None = None) -> np.ndarray:
    """Analytic gradient of every cell log-likelihood with respect to the
    flattened coefficients ``(kappa, gamma, delta)``.

    Returns:
        Array of shape (n, T, P); zeros on missing cells, NaN on observed
        cells off the support.
    """
    y, x, mask = data.observed_inputs(individuals)
    eta, params, valid = _linked(coeffs, x, spec)
    sigma = np.where(valid, params['sigma'], 1.0)
    xi = np.where(valid, params['xi'], 0.0)
    if spec.family is Family.GP:
        partial = gp.score(y, sigma, xi)
    else:
        partial = gev.score(y, np.where(valid, params['mu'], 0.0), sigma, xi)
    blocks = []
    for k, name in enumerate(spec.parameters()):
        link = spec.get_link(name)
        chain = partial[..., k] * link.derivative(eta[name], params[name])
        blocks.append(chain[..., None] * spec.design(x, name))
    scores = np.concatenate(blocks, axis=-1)
    scores = np.where(valid[..., None], scores, np.nan)
    return np.where(mask[..., None], scores, 0.0)

def period_scores(data: PanelData, members: Sequence[int],
                  coeffs: GroupCoefficients, spec: LinkSpec) -> np.ndarray:
    """Scores of a group summed over its members within each period, (T, P)."""
    return cell_scores(data, coeffs, spec, members).sum(axis=0)

def summed_scores(data: PanelData, members: Sequence[int],
                  coeffs: GroupCoefficients, spec: LinkSpec) -> np.ndarray:
    """Gradient of :func:`group_loglik`, summed over observed cells only."""
    members = np.asarray(members, dtype=int)
    scores = cell_scores(data, coeffs, spec, members)
    return scores[data.mask[members]].sum(axis=0)
