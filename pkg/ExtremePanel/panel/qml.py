"""Per-group quasi-maximum likelihood estimation."""
from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from scipy.optimize import minimize

from ..regression import Family, GroupCoefficients, LinkKind, LinkSpec, coefficient_count
from ..utils import (
    ConfigError,
    FitError,
    LikelihoodError,
    NumericalRankError,
    UnderdeterminedError,
)
from .covariance import group_sandwich
from .data import GroupAssignment, PanelData
from .likelihood import group_loglik, summed_scores
from .option import OptimOption
from .result import FitResult, standard_errors

logger = logging.getLogger(__name__)

N_FALLBACKS = 6
GUMBEL_SCALE = np.sqrt(6.0) / np.pi
SHAPE_START = 0.1


def _intercept(link: LinkKind, value: float) -> float:
    return link.inverse(value) if link is LinkKind.EXP else value

def initial_coefficients(data: PanelData, members: Sequence[int],
                         spec: LinkSpec) -> GroupCoefficients:
    """Moment-based starting coefficients from the pooled member responses.

    Location starts at the sample median, the scale at ``0.78`` times the
    sample standard deviation (the mean excess for GP panels), the shape at
    0.1; slopes start at 0.
    """
    values = data.y[np.asarray(members, dtype=int)]
    values = values[~np.isnan(values)]
    if len(values) == 0:
        raise UnderdeterminedError("members have no observed responses")
    centre = float(np.median(values))
    spread = float(np.std(values))
    if spec.family is Family.GP:
        scale = float(np.mean(values))
    else:
        scale = GUMBEL_SCALE * spread
    if not scale > 0:
        scale = 1e-3 * (1.0 + abs(centre))

    n_kappa, n_gamma, n_delta = spec.sizes
    kappa = np.zeros(n_kappa)
    if n_kappa:
        if spec.mu_link is LinkKind.EXP:
            kappa[0] = np.log(centre) if centre > 0 else np.log(scale)
        else:
            kappa[0] = centre
    gamma = np.zeros(n_gamma)
    gamma[0] = _intercept(spec.sigma_link, scale)
    delta = np.zeros(n_delta)
    delta[0] = _intercept(spec.xi_link, SHAPE_START)
    return GroupCoefficients(kappa, gamma, delta)

def _fallback(coeffs: GroupCoefficients, spec: LinkSpec) -> GroupCoefficients:
    """Halve the shape intercept and double the scale intercept."""
    gamma = np.array(coeffs.gamma)
    delta = np.array(coeffs.delta)
    if spec.sigma_link is LinkKind.EXP:
        gamma[0] += np.log(2.0)
    else:
        gamma[0] *= 2.0
    if spec.xi_link is LinkKind.EXP:
        delta[0] -= np.log(2.0)
    else:
        delta[0] *= 0.5
    return GroupCoefficients(coeffs.kappa, gamma, delta)

def _feasible_start(data: PanelData, members: Sequence[int],
                    spec: LinkSpec, init: GroupCoefficients) -> tuple:
    coeffs = init
    for attempt in range(N_FALLBACKS + 1):
        loglik = group_loglik(data, members, coeffs, spec)
        if np.isfinite(loglik):
            if attempt:
                logger.info('Feasible start found after %d fallback(s)', attempt)
            return coeffs, loglik
        coeffs = _fallback(coeffs, spec)
    raise FitError(
        f"no feasible starting point after {N_FALLBACKS} fallback initializations"
    )

def fit_qml_group(data: PanelData,
                  members: Sequence[int],
                  spec: LinkSpec,
                  init: GroupCoefficients | None = None,
                  opts: OptimOption | None = None) -> tuple:
    """Maximize the summed log-likelihood of one group of individuals.

    Nelder-Mead on the flattened coefficients (the objective is ``+inf``
    off the support), restarted from its best vertex, then a BFGS polish
    driven by the analytic score. A stage is only accepted if it improves
    the objective, so the returned log-likelihood is never below the one
    at ``init``.

    Args:
        data: Panel data.
        members: 0-based indices of the group members.
        spec: Regression structure.
        init: Starting coefficients; moment-based if None.
        opts: Optimizer options.

    Returns:
        ``(coefficients, loglik)``.

    Raises:
        UnderdeterminedError: If the members carry fewer than P observations.
        FitError: If no feasible start is found.
    """
    opts = opts or OptimOption()
    members = np.asarray(members, dtype=int)
    spec.check_columns(data.n_covariates)
    n_params = coefficient_count(spec)
    n_obs = int(data.mask[members].sum()) if len(members) else 0
    if n_obs < n_params:
        raise UnderdeterminedError(
            f"{n_obs} observation(s) for {n_params} coefficient(s)"
        )
    if init is None:
        init = initial_coefficients(data, members, spec)
    init.check(spec)
    start, start_loglik = _feasible_start(data, members, spec, init)

    def objective(theta):
        value = group_loglik(data, members, GroupCoefficients.from_flat(theta, spec), spec)
        return -value if np.isfinite(value) else np.inf

    def gradient(theta):
        coeffs = GroupCoefficients.from_flat(theta, spec)
        total = -summed_scores(data, members, coeffs, spec)
        return np.where(np.isfinite(total), total, 0.0)

    best_theta = start.flatten()
    best_value = -start_loglik
    for _ in range(opts.n_simplex_restarts + 1):
        fatol = opts.tolerance * (1.0 + abs(best_value))
        result = minimize(
            objective, best_theta, method='Nelder-Mead',
            options={
                'maxiter': opts.max_iterations, 'maxfev': 4 * opts.max_iterations,
                'xatol': 1e-6, 'fatol': fatol, 'adaptive': True,
            },
        )
        improvement = best_value - result.fun
        if result.fun < best_value:
            best_theta, best_value = np.array(result.x), float(result.fun)
        if not improvement > fatol:
            break

    if opts.polish:
        with np.errstate(all='ignore'):
            polished = minimize(
                objective, best_theta, jac=gradient, method='BFGS',
                options={'maxiter': opts.max_iterations, 'gtol': 1e-8},
            )
        if np.isfinite(polished.fun) and polished.fun < best_value:
            best_theta, best_value = np.array(polished.x), float(polished.fun)

    logger.debug(
        'Group of %d member(s): loglik %.6f -> %.6f',
        len(members), start_loglik, -best_value
    )
    return GroupCoefficients.from_flat(best_theta, spec), -best_value

def panel_sample_size(data: PanelData, spec: LinkSpec) -> int:
    """Sample size of the BIC: N*T for GEV panels, observed cells for GP."""
    if spec.family is Family.GP:
        return data.n_observed
    return data.n_individuals * data.n_periods

def group_covariances(data: PanelData, assignment: GroupAssignment,
                      coeffs: Sequence[GroupCoefficients], spec: LinkSpec,
                      fd_step: float = 1e-5) -> tuple:
    """Sandwich and inverse-Hessian covariance of every group.

    A group with a singular Hessian gets NaN matrices and is listed in the
    returned ``singular`` labels.

    Returns:
        ``(sandwich list, inverse-Hessian list, singular labels)``.
    """
    sandwiches, inverse_hessians, singular = [], [], []
    for group, group_coeffs in enumerate(coeffs, start=1):
        try:
            sandwich, inverse_hessian = group_sandwich(
                data, assignment.members(group), group_coeffs, spec, fd_step
            )
        except (NumericalRankError, LikelihoodError) as error:
            logger.warning('Covariance of group %d unavailable: %s', group, error)
            n_params = len(group_coeffs.flatten())
            sandwich = np.full((n_params, n_params), np.nan)
            inverse_hessian = sandwich.copy()
            singular.append(group)
        sandwiches.append(sandwich)
        inverse_hessians.append(inverse_hessian)
    return sandwiches, inverse_hessians, singular

def fit_grouped_panel(data: PanelData,
                      assignment: GroupAssignment,
                      spec: LinkSpec,
                      opts: OptimOption | None = None,
                      init: Sequence[GroupCoefficients] | None = None) -> FitResult:
    """Fit group-wise QML for a given assignment.

    Used for a priori groupings, for the local fit with one group per
    individual and for the final estimate of the EM algorithm.

    Raises:
        ConfigError: If a group has no member or dimensions disagree.
        UnderdeterminedError: If a group has too few observations.
        FitError: If a group has no feasible start.
    """
    opts = opts or OptimOption()
    if len(assignment) != data.n_individuals:
        raise ConfigError(
            f"assignment has {len(assignment)} entries for "
            f"{data.n_individuals} individuals"
        )
    empty = np.flatnonzero(assignment.group_sizes() == 0) + 1
    if len(empty):
        raise ConfigError(f"group(s) {empty.tolist()} have no member")
    coeffs, loglik = [], 0.0
    for group in range(1, assignment.n_groups + 1):
        members = assignment.members(group)
        start = None if init is None else init[group - 1]
        group_coeffs, group_value = fit_qml_group(data, members, spec, start, opts)
        coeffs.append(group_coeffs)
        loglik += group_value
    sandwiches, inverse_hessians, singular = group_covariances(
        data, assignment, coeffs, spec, opts.fd_step
    )
    diagnostics = {'singular_groups': singular} if singular else {}
    return FitResult(
        coefficients=coeffs,
        assignment=assignment,
        loglik=loglik,
        covariance=sandwiches,
        std_errors=[standard_errors(c) for c in sandwiches],
        n_obs=panel_sample_size(data, spec),
        inverse_hessian=inverse_hessians,
        diagnostics=diagnostics,
    )
