import numpy as np
import pytest

from ExtremePanel.panel import GroupAssignment, PanelData
from ExtremePanel.utils import ConfigError, make_generator


def test_panel_data():
    y = np.array([[1.0, np.nan, 3.0], [4.0, 5.0, 6.0]])
    x = np.arange(12, dtype=float).reshape(2, 3, 2)
    data = PanelData(y, x, ['a', 'b'], ['s1', 's2'], [2001, 2002, 2003])

    assert data.n_individuals == 2
    assert data.n_periods == 3
    assert data.n_covariates == 2
    assert data.n_observed == 5
    assert data.get_column_names() == ['a', 'b']
    assert data.get_individual_ids() == ['s1', 's2']
    assert data.get_time_index() == [2001, 2002, 2003]
    np.testing.assert_array_equal(
        data.mask, [[True, False, True], [True, True, True]]
    )
    assert repr(data) == 'PanelData(N=2, T=3, K=2, observed=5)'
    with pytest.raises(ValueError):
        data.y[0, 0] = 10.0

def test_panel_data_defaults():
    data = PanelData(np.zeros((3, 4)))
    assert data.n_covariates == 0
    assert data.get_individual_ids() == [0, 1, 2]
    assert data.get_time_index() == [0, 1, 2, 3]
    assert data.get_column_names() == []

def test_panel_data_missing_covariates_allowed():
    y = np.array([[1.0, np.nan]])
    x = np.array([[[0.5], [np.nan]]])
    data = PanelData(y, x)
    _, x_filled, mask = data.observed_inputs()
    assert x_filled[0, 1, 0] == 0.0
    assert not mask[0, 1]

@pytest.mark.parametrize('y, x', [
    (np.zeros(3), None),
    (np.zeros((0, 3)), None),
    (np.array([[1.0, np.inf]]), None),
    (np.zeros((2, 3)), np.zeros((2, 2, 1))),
    (np.zeros((1, 2)), np.array([[[0.0], [np.nan]]])),
])
def test_panel_data_invalid(y, x):
    with pytest.raises(ConfigError):
        PanelData(y, x)

def test_panel_data_invalid_names():
    with pytest.raises(ConfigError):
        PanelData(np.zeros((2, 2)), np.zeros((2, 2, 1)), ['a', 'b'])
    with pytest.raises(ConfigError):
        PanelData(np.zeros((2, 2)), individual_ids=['only'])

def test_subset():
    y = np.arange(6, dtype=float).reshape(3, 2)
    data = PanelData(y, individual_ids=['a', 'b', 'c'])
    sub = data.subset([2, 0])
    np.testing.assert_array_equal(sub.y, [[4.0, 5.0], [0.0, 1.0]])
    assert sub.get_individual_ids() == ['c', 'a']
    with pytest.raises(ConfigError):
        data.subset([])
    with pytest.raises(ConfigError):
        data.subset([3])

def test_with_missing():
    data = PanelData(np.ones((3, 10)))
    thinned = data.with_missing([0, 2], 0.3, make_generator(1))
    np.testing.assert_array_equal(thinned.mask.sum(axis=1), [7, 10, 7])
    assert data.n_observed == 30
    again = data.with_missing([0, 2], 0.3, make_generator(1))
    np.testing.assert_array_equal(thinned.mask, again.mask)
    with pytest.raises(ConfigError):
        data.with_missing([0], 1.5, make_generator(1))


def test_group_assignment():
    assignment = GroupAssignment([1, 2, 2, 1, 3])
    assert assignment.n_groups == 3
    assert len(assignment) == 5
    np.testing.assert_array_equal(assignment.members(1), [0, 3])
    np.testing.assert_array_equal(assignment.group_sizes(), [2, 2, 1])
    np.testing.assert_array_equal(assignment.zero_based(), [0, 1, 1, 0, 2])
    assert assignment.to_list() == [1, 2, 2, 1, 3]
    assert assignment == GroupAssignment.from_zero_based([0, 1, 1, 0, 2], 3)
    assert assignment != GroupAssignment([1, 2, 2, 1, 3], 4)
    assert GroupAssignment.single(3) == GroupAssignment([1, 1, 1])

@pytest.mark.parametrize('tau, n_groups', [
    ([], None),
    ([0, 1], None),
    ([1, 3], 2),
    ([1, 1], 0),
])
def test_group_assignment_invalid(tau, n_groups):
    with pytest.raises(ConfigError):
        GroupAssignment(tau, n_groups)
