import math

import numpy as np
import pytest

from ExtremePanel.panel import (
    FitResult,
    GroupAssignment,
    OptimOption,
    PanelData,
    cell_scores,
    fit_grouped_panel,
    fit_qml_group,
    group_loglik,
    initial_coefficients,
    panel_loglik,
)
from ExtremePanel.regression import Family, GroupCoefficients, LinkSpec
from ExtremePanel.utils import ConfigError, FitError, UnderdeterminedError

from .test_likelihood import (
    INTERCEPT_SPEC,
    SLOPE_SPEC,
    intercepts,
    simulate_group_panel,
)

TRUTH = intercepts(3.10, math.exp(-0.05), 0.30)


@pytest.fixture(scope='module')
def single_group():
    return simulate_group_panel([TRUTH], [1] * 6, 300, INTERCEPT_SPEC, seed=7)

@pytest.fixture(scope='module')
def single_group_fit(single_group):
    data, assignment = single_group
    return fit_grouped_panel(data, assignment, INTERCEPT_SPEC)


def test_initial_coefficients():
    data = PanelData(np.array([[1.0, 2.0, 3.0, np.nan]]))
    coeffs = initial_coefficients(data, [0], INTERCEPT_SPEC)
    assert coeffs.kappa[0] == 2.0
    assert coeffs.gamma[0] == pytest.approx(math.log(np.std([1, 2, 3]) * math.sqrt(6) / math.pi))
    assert coeffs.delta[0] == pytest.approx(0.1)

    spec = LinkSpec('exp', 'exp', 'exp', (0,), (), ())
    data = PanelData(np.array([[1.0, 2.0, 3.0]]), np.zeros((1, 3, 1)))
    coeffs = initial_coefficients(data, [0], spec)
    assert coeffs.kappa.tolist() == [math.log(2.0), 0.0]
    assert coeffs.delta[0] == pytest.approx(math.log(0.1))

def test_initial_coefficients_gp_uses_mean_excess():
    spec = LinkSpec(family=Family.GP)
    data = PanelData(np.array([[1.0, 2.0, 6.0]]))
    coeffs = initial_coefficients(data, [0], spec)
    assert len(coeffs.kappa) == 0
    assert coeffs.gamma[0] == pytest.approx(math.log(3.0))

def test_recovers_truth(single_group_fit):
    truth = TRUTH.flatten()
    estimate = single_group_fit.coefficients[0].flatten()
    errors = single_group_fit.std_errors[0]
    assert np.all(errors > 0)
    assert np.all(np.abs(estimate - truth) < 3 * errors)

def test_first_order_condition(single_group, single_group_fit):
    data, _ = single_group
    scores = cell_scores(data, single_group_fit.coefficients[0], INTERCEPT_SPEC)
    total = scores.sum(axis=(0, 1))
    assert np.all(np.abs(total) / (1 + abs(single_group_fit.loglik)) < 1e-4)

def test_refit_from_optimum_is_fixed_point(single_group, single_group_fit):
    data, _ = single_group
    coeffs, loglik = fit_qml_group(
        data, range(6), INTERCEPT_SPEC, init=single_group_fit.coefficients[0]
    )
    assert loglik >= single_group_fit.loglik - 1e-8
    assert abs(loglik - single_group_fit.loglik) < 1e-6

def test_fit_result_loglik_consistent(single_group, single_group_fit):
    data, assignment = single_group
    recomputed = panel_loglik(
        data, single_group_fit.coefficients, assignment, INTERCEPT_SPEC
    )
    assert single_group_fit.loglik == pytest.approx(recomputed, abs=1e-8)
    assert single_group_fit.n_obs == 6 * 300
    assert isinstance(single_group_fit, FitResult)

def test_never_below_init():
    coeffs = GroupCoefficients([0.5, 1.0], [0.0, 0.2], [0.1])
    x = np.linspace(-1, 1, 40).reshape(2, 20, 1)
    data, _ = simulate_group_panel([coeffs], [1, 1], 20, SLOPE_SPEC, seed=2, x=x)
    init = GroupCoefficients([0.0, 0.0], [0.5, 0.0], [0.0])
    before = group_loglik(data, [0, 1], init, SLOPE_SPEC)
    _, loglik = fit_qml_group(
        data, [0, 1], SLOPE_SPEC, init, OptimOption(max_iterations=50, polish=False)
    )
    assert loglik >= before - 1e-8

def test_fallback_start():
    data, _ = simulate_group_panel([intercepts(0.0, 1.0, 0.0)], [1], 50,
                                   INTERCEPT_SPEC, seed=3)
    # lower endpoint at 9.5: every observation off the support
    init = intercepts(10.0, 1.0, 2.0)
    assert group_loglik(data, [0], init, INTERCEPT_SPEC) == -np.inf
    coeffs, loglik = fit_qml_group(data, [0], INTERCEPT_SPEC, init)
    assert np.isfinite(loglik)

def test_no_feasible_start():
    data = PanelData(np.array([[0.0, 1.0, 2.0, 3.0]]))
    # identity shape link keeps halving 50 toward 0: support never reached
    init = intercepts(1e6, 1e-6, 50.0)
    with pytest.raises(FitError):
        fit_qml_group(data, [0], INTERCEPT_SPEC, init)

@pytest.mark.parametrize('y', [
    np.full((2, 3), np.nan),
    np.array([[1.0, np.nan, np.nan], [np.nan, 2.0, np.nan]]),
])
def test_underdetermined(y):
    with pytest.raises(UnderdeterminedError):
        fit_qml_group(PanelData(y), [0, 1], INTERCEPT_SPEC)

def test_fit_grouped_panel_empty_group():
    data = PanelData(np.zeros((2, 5)))
    with pytest.raises(ConfigError):
        fit_grouped_panel(data, GroupAssignment([1, 1], 2), INTERCEPT_SPEC)
    with pytest.raises(ConfigError):
        fit_grouped_panel(data, GroupAssignment([1, 1, 1]), INTERCEPT_SPEC)

def test_fit_grouped_panel_two_groups():
    coeffs = [intercepts(0.0, 1.0, 0.1), intercepts(20.0, 2.0, -0.1)]
    data, assignment = simulate_group_panel(coeffs, [1, 2, 1, 2], 100,
                                            INTERCEPT_SPEC, seed=4)
    result = fit_grouped_panel(data, assignment, INTERCEPT_SPEC)
    assert result.n_groups == 2
    assert result.coefficients[0].kappa[0] == pytest.approx(0.0, abs=0.5)
    assert result.coefficients[1].kappa[0] == pytest.approx(20.0, abs=1.0)
    assert len(result.inverse_hessian) == 2
    assert result.diagnostics == {}
