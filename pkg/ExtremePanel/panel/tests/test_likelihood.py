import math

import numpy as np
import pytest

from ExtremePanel.distribution import GevParams, gev, gev_logpdf
from ExtremePanel.panel import (
    GroupAssignment,
    PanelData,
    cell_loglik,
    fit_grouped_panel,
    individual_loglik_matrix,
    panel_loglik,
    score_vector,
)
from ExtremePanel.regression import GroupCoefficients, LinkSpec, param_arrays
from ExtremePanel.utils import ConfigError, make_generator

INTERCEPT_SPEC = LinkSpec()
SLOPE_SPEC = LinkSpec(mu_terms=(0,), sigma_terms=(0,))


def simulate_group_panel(coeffs, tau, n_periods, spec, seed=0, x=None):
    """Draw GEV responses cell by cell from each individual's group."""
    rng = make_generator(seed)
    tau = np.asarray(tau)
    if x is None:
        x = np.zeros((len(tau), n_periods, 0))
    y = np.empty((len(tau), n_periods))
    for group, group_coeffs in enumerate(coeffs, start=1):
        rows = tau == group
        params = param_arrays(group_coeffs, x[rows], spec)
        u = rng.uniform(size=(int(rows.sum()), n_periods))
        y[rows] = gev.quantile(u, params['mu'], params['sigma'], params['xi'])
    return PanelData(y, x), GroupAssignment(tau, len(coeffs))

def intercepts(mu, sigma, xi):
    return GroupCoefficients([mu], [math.log(sigma)], [xi])


def test_single_cell():
    data = PanelData(np.zeros((1, 1)))
    value = panel_loglik(
        data, [intercepts(0.0, 1.0, 0.5)], GroupAssignment([1]), INTERCEPT_SPEC
    )
    assert value == pytest.approx(-1.0, abs=1e-12)

def test_all_missing():
    data = PanelData(np.full((2, 3), np.nan))
    value = panel_loglik(
        data, [intercepts(0.0, 1.0, 0.1)], GroupAssignment([1, 1]), INTERCEPT_SPEC
    )
    assert value == 0.0

def test_additivity_over_groups():
    coeffs = [intercepts(0.0, 1.0, 0.1), intercepts(5.0, 2.0, -0.1)]
    data, assignment = simulate_group_panel(coeffs, [1, 2], 20, INTERCEPT_SPEC)
    total = panel_loglik(data, coeffs, assignment, INTERCEPT_SPEC)
    first = panel_loglik(data.subset([0]), coeffs[:1], GroupAssignment([1]),
                         INTERCEPT_SPEC)
    second = panel_loglik(data.subset([1]), coeffs[1:], GroupAssignment([1]),
                          INTERCEPT_SPEC)
    assert total == pytest.approx(first + second, rel=1e-12)

def test_matches_cellwise_density():
    coeffs = GroupCoefficients([1.0, 0.5], [0.1, -0.2], [0.05])
    x = make_generator(3).normal(size=(2, 4, 1))
    data, assignment = simulate_group_panel([coeffs], [1, 1], 4, SLOPE_SPEC, x=x)
    expected = 0.0
    for i in range(2):
        for t in range(4):
            xr = x[i, t, 0]
            params = GevParams(1.0 + 0.5 * xr, math.exp(0.1 - 0.2 * xr), 0.05)
            expected += gev_logpdf(data.y[i, t], params)
    assert panel_loglik(data, [coeffs], assignment, SLOPE_SPEC) == pytest.approx(expected)

def test_off_support_is_minus_inf():
    # upper endpoint of (0, 1, -0.5) is 2
    data = PanelData(np.array([[0.0, 3.0]]))
    value = panel_loglik(
        data, [intercepts(0.0, 1.0, -0.5)], GroupAssignment([1]), INTERCEPT_SPEC
    )
    assert value == -np.inf

def test_nonpositive_identity_scale_is_minus_inf():
    spec = LinkSpec(sigma_link='identity', sigma_certified=True)
    data = PanelData(np.zeros((1, 2)))
    coeffs = GroupCoefficients([0.0], [-1.0], [0.0])
    assert panel_loglik(data, [coeffs], GroupAssignment([1]), spec) == -np.inf

def pad_with_missing(data, n_extra):
    """Spread the periods of ``data`` over a wider grid of missing cells."""
    n_periods = data.n_periods + n_extra
    columns = np.sort(make_generator(5).choice(n_periods, data.n_periods, replace=False))
    y = np.full((data.n_individuals, n_periods), np.nan)
    y[:, columns] = data.y
    x = np.zeros((data.n_individuals, n_periods, data.n_covariates))
    x[:, columns] = data.x
    return PanelData(y, x)

def test_missing_cells_contribute_nothing():
    coeffs = [intercepts(0.0, 1.0, 0.1)]
    data, assignment = simulate_group_panel(coeffs, [1, 1], 40, INTERCEPT_SPEC)
    padded = pad_with_missing(data, 23)
    assert panel_loglik(padded, coeffs, assignment, INTERCEPT_SPEC) == \
        panel_loglik(data, coeffs, assignment, INTERCEPT_SPEC)
    np.testing.assert_array_equal(
        individual_loglik_matrix(padded, coeffs, INTERCEPT_SPEC),
        individual_loglik_matrix(data, coeffs, INTERCEPT_SPEC),
    )

def test_missing_cells_leave_fit_unchanged():
    coeffs = [intercepts(0.0, 1.0, 0.1), intercepts(4.0, 2.0, -0.1)]
    data, assignment = simulate_group_panel(coeffs, [1, 2, 1, 2], 60, INTERCEPT_SPEC,
                                            seed=3)
    padded = pad_with_missing(data, 37)
    base = fit_grouped_panel(data, assignment, INTERCEPT_SPEC)
    wide = fit_grouped_panel(padded, assignment, INTERCEPT_SPEC)
    assert wide.loglik == base.loglik
    for g in range(2):
        np.testing.assert_array_equal(wide.coefficients[g].flatten(),
                                      base.coefficients[g].flatten())
        np.testing.assert_array_equal(wide.covariance[g], base.covariance[g])
        np.testing.assert_array_equal(wide.inverse_hessian[g], base.inverse_hessian[g])

@pytest.mark.parametrize('n_coeffs, tau, n_groups, spec', [
    (2, [1, 1], 1, INTERCEPT_SPEC),
    (1, [1, 1, 1], 1, INTERCEPT_SPEC),
    (1, [1, 1], 1, LinkSpec(mu_terms=(0,))),
])
def test_dimension_mismatch(n_coeffs, tau, n_groups, spec):
    data = PanelData(np.zeros((2, 3)))
    coeffs = [intercepts(0.0, 1.0, 0.1)] * n_coeffs
    with pytest.raises(ConfigError):
        panel_loglik(data, coeffs, GroupAssignment(tau, n_groups), spec)

def test_individual_loglik_matrix():
    coeffs = [intercepts(0.0, 1.0, 0.1), intercepts(3.0, 1.0, 0.1)]
    data, assignment = simulate_group_panel(coeffs, [1, 2, 2], 10, INTERCEPT_SPEC)
    matrix = individual_loglik_matrix(data, coeffs, INTERCEPT_SPEC)
    assert matrix.shape == (3, 2)
    np.testing.assert_allclose(
        matrix[1, 0], cell_loglik(data, coeffs[0], INTERCEPT_SPEC, [1]).sum()
    )
    chosen = matrix[np.arange(3), assignment.zero_based()].sum()
    assert chosen == pytest.approx(panel_loglik(data, coeffs, assignment, INTERCEPT_SPEC))


@pytest.mark.parametrize('seed', range(20))
def test_analytic_score_matches_finite_difference(seed):
    rng = make_generator(100 + seed)
    coeffs = GroupCoefficients(
        rng.normal(size=2), rng.normal(scale=0.3, size=2), [rng.uniform(-0.3, 0.3)]
    )
    x = rng.normal(size=(1, 1, 1))
    data, assignment = simulate_group_panel(
        [coeffs], [1], 1, SLOPE_SPEC, seed=seed, x=x
    )
    analytic = score_vector(data, [coeffs], assignment, SLOPE_SPEC, 0, 0)
    numeric = score_vector(
        data, [coeffs], assignment, SLOPE_SPEC, 0, 0, method='numeric', fd_step=1e-6
    )
    np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-7)

def test_gumbel_location_score_at_mode():
    data = PanelData(np.array([[0.0]]))
    coeffs = [intercepts(0.0, 1.0, 0.0)]
    analytic = score_vector(data, coeffs, GroupAssignment([1]), INTERCEPT_SPEC, 0, 0)
    numeric = score_vector(data, coeffs, GroupAssignment([1]), INTERCEPT_SPEC, 0, 0,
                           method='numeric', fd_step=1e-6)
    assert analytic[0] == pytest.approx(0.0, abs=1e-12)
    assert numeric[0] == pytest.approx(0.0, abs=1e-6)
