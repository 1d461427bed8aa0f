import numpy as np
import pytest

from ExtremePanel.evaluation import gumbel_residuals, qq_points
from ExtremePanel.panel import FitResult, GroupAssignment, PanelData
from ExtremePanel.panel.tests.test_likelihood import (
    INTERCEPT_SPEC,
    intercepts,
    simulate_group_panel,
)

EULER_GAMMA = 0.5772156649015329


def test_residuals_are_standard_gumbel():
    coeffs = [intercepts(2.0, 3.0, 0.2), intercepts(-1.0, 0.5, -0.2)]
    data, assignment = simulate_group_panel(coeffs, [1, 2, 2, 1], 2500,
                                            INTERCEPT_SPEC, seed=17)
    result = FitResult(coeffs, assignment, 0.0, [None] * 2, [None] * 2, n_obs=1)
    residuals = gumbel_residuals(data, result, INTERCEPT_SPEC)
    assert residuals.shape == (4, 2500)
    assert residuals.mean() == pytest.approx(EULER_GAMMA, abs=0.05)
    assert residuals.var() == pytest.approx(np.pi ** 2 / 6, rel=0.05)

def test_residuals_nan_on_missing():
    coeffs = [intercepts(0.0, 1.0, 0.0)]
    data = PanelData(np.array([[0.0, np.nan]]))
    result = FitResult(coeffs, GroupAssignment([1]), 0.0, [None], [None], n_obs=1)
    residuals = gumbel_residuals(data, result, INTERCEPT_SPEC)
    assert residuals[0, 0] == pytest.approx(0.0, abs=1e-12)
    assert np.isnan(residuals[0, 1])

def test_qq_points():
    residuals = np.array([[2.0, np.nan, -1.0], [0.5, np.inf, 1.0]])
    theoretical, empirical = qq_points(residuals)
    np.testing.assert_array_equal(empirical, [-1.0, 0.5, 1.0, 2.0])
    assert theoretical[0] == pytest.approx(-np.log(-np.log(0.2)))
    assert np.all(np.diff(theoretical) > 0)
