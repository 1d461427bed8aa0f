import json

import numpy as np
import pytest
from scipy import stats

from ExtremePanel.distribution import gev_cdf, gev_logpdf, gev_quantile
from ExtremePanel.panel import GroupAssignment
from ExtremePanel.regression import eval_params
from ExtremePanel.simulation import (
    REFERENCE_GROUPS,
    CopulaSpec,
    CovariateParams,
    DgpConfig,
    GroupParams,
    simulate_covariates,
    simulate_panel,
    simulation_link_spec,
)
from ExtremePanel.utils import ConfigError, make_generator

ZERO_GROUP = GroupParams(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def test_reference_defaults():
    config = DgpConfig()
    assert config.n_groups == 4
    assert config.n_individuals == 24
    assert config.true_assignment().group_sizes().tolist() == [6, 6, 6, 6]
    coeffs = config.true_coefficients()[1]
    assert coeffs.kappa.tolist() == [3.40, 1.40, 1.00]
    assert coeffs.gamma.tolist() == [-0.15, 0.06, 0.07]
    assert coeffs.delta.tolist() == [0.27]

def test_remainder_joins_last_group():
    config = DgpConfig(n_individuals=10)
    assert config.true_assignment().to_list() == [1, 1, 2, 2, 3, 3, 4, 4, 4, 4]

@pytest.mark.parametrize('changes', [
    {'u_bounds': (6.0, 2.0)},
    {'n_individuals': 3},
    {'n_periods': 0},
    {'group_params': ()},
])
def test_invalid_config(changes):
    with pytest.raises(ConfigError):
        DgpConfig(**changes)

def test_invalid_covariate_variance():
    with pytest.raises(ConfigError):
        CovariateParams(nu_f=0.0)

def test_config_file_round_trip(tmp_path):
    config = DgpConfig(copula=CopulaSpec.gumbel(2.0), n_periods=20, seed=7)
    path = tmp_path / 'dgp.json'
    config.save(str(path))
    assert json.loads(path.read_text())['covariates']['lambda'] == 0.4
    assert DgpConfig.load(str(path)) == config

def test_partial_config_uses_reference_values():
    config = DgpConfig.from_dict({'T': 20, 'copula': {'kind': 'gaussian', 'parameter': 0.5}})
    assert config.group_params == REFERENCE_GROUPS
    assert config.n_periods == 20
    assert config.copula == CopulaSpec.gaussian(0.5)

def test_bad_config_file(tmp_path):
    path = tmp_path / 'dgp.json'
    path.write_text('{"groups": [{"kappa0": 1}]}')
    with pytest.raises(ConfigError):
        DgpConfig.load(str(path))
    path.write_text('not json')
    with pytest.raises(ConfigError):
        DgpConfig.load(str(path))

def test_degenerate_covariates():
    params = CovariateParams(beta=0.0, nu_i=1e-12)
    config = DgpConfig(covariate_params=params, n_individuals=5, n_periods=8)
    x = simulate_covariates(config, make_generator(0))
    t = np.arange(1, 9)
    expected = params.omega + params.trend / 8 * t
    np.testing.assert_allclose(x[:, :, 0], np.broadcast_to(expected, (5, 8)), atol=1e-4)

def test_covariate_moments_and_support():
    params = CovariateParams(beta=0.0)
    config = DgpConfig(covariate_params=params, n_individuals=10000, n_periods=2)
    x = simulate_covariates(config, make_generator(1))
    mean = x[:, 0, 0].mean()
    assert mean == pytest.approx(params.omega + params.trend / 2,
                                 abs=3 * np.sqrt(params.nu_i) / 100)
    assert x[:, :, 1].min() > 2.0
    assert x[:, :, 1].max() < 6.0
    np.testing.assert_array_equal(x[:, 0, 1], x[:, 1, 1])

def test_simulation_is_reproducible():
    config = DgpConfig(n_periods=10, copula=CopulaSpec.gaussian(0.5))
    first = simulate_panel(config, make_generator(4))
    second = simulate_panel(config, make_generator(4))
    np.testing.assert_array_equal(first.data.y, second.data.y)
    np.testing.assert_array_equal(first.data.x, second.data.x)

def test_panel_shape_and_truth():
    config = DgpConfig(n_periods=12)
    simulated = simulate_panel(config, make_generator(8))
    assert simulated.data.y.shape == (24, 12)
    assert simulated.data.get_column_names() == ['x1', 'x2']
    assert simulated.assignment == config.true_assignment()
    spec = simulation_link_spec()
    for i, t in [(0, 0), (7, 5), (23, 11)]:
        group = simulated.assignment.tau[i]
        params = eval_params(simulated.coefficients[group - 1], simulated.data.x[i, t], spec)
        assert simulated.true_q99[i, t] == pytest.approx(gev_quantile(0.99, params), rel=1e-12)
        assert gev_cdf(simulated.data.y[i, t], params) > 0

def test_cells_lie_in_support():
    simulated = simulate_panel(DgpConfig(n_periods=30), make_generator(9))
    spec = simulation_link_spec()
    for i in range(24):
        group = simulated.assignment.tau[i]
        for t in range(30):
            params = eval_params(simulated.coefficients[group - 1],
                                 simulated.data.x[i, t], spec)
            assert np.isfinite(gev_logpdf(simulated.data.y[i, t], params))

def test_unit_parameters_give_standard_gumbel():
    config = DgpConfig(group_params=(ZERO_GROUP,), n_individuals=4, n_periods=5000)
    simulated = simulate_panel(config, make_generator(6))
    assert simulated.assignment == GroupAssignment.single(4)
    draws = simulated.data.y.reshape(-1)
    assert stats.kstest(draws, stats.gumbel_r.cdf).statistic < 0.015

def test_marginal_distribution_of_one_cell():
    config = DgpConfig(n_individuals=4, n_periods=1, copula=CopulaSpec.gumbel(2.0))
    spec = simulation_link_spec()
    probabilities = []
    for seed in range(2000):
        simulated = simulate_panel(config, make_generator(seed))
        params = eval_params(simulated.coefficients[0], simulated.data.x[0, 0], spec)
        probabilities.append(gev_cdf(simulated.data.y[0, 0], params))
    assert stats.kstest(probabilities, 'uniform').statistic < 0.04

def test_group_params_dict():
    params = REFERENCE_GROUPS[2]
    assert GroupParams.from_dict(params.to_dict()) == params
    assert isinstance(params.coefficients().kappa, np.ndarray)
