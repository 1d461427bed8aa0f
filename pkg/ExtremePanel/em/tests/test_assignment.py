import numpy as np
import pytest

from ExtremePanel.em import (
    assign_groups,
    best_groups,
    canonicalize_labels,
    random_assignment,
)
from ExtremePanel.panel import GroupAssignment, PanelData, fit_grouped_panel
from ExtremePanel.panel.tests.test_likelihood import (
    INTERCEPT_SPEC,
    intercepts,
    simulate_group_panel,
)
from ExtremePanel.utils import ConfigError, make_generator

FAR = [intercepts(0.0, 1.0, 0.1), intercepts(50.0, 1.0, 0.1)]


@pytest.mark.parametrize('seed', range(10))
def test_random_assignment_covers_groups(seed):
    assignment = random_assignment(7, 4, make_generator(seed))
    assert assignment.n_groups == 4
    assert np.all(assignment.group_sizes() >= 1)

def test_random_assignment_deterministic():
    first = random_assignment(10, 3, make_generator(4))
    second = random_assignment(10, 3, make_generator(4))
    assert first == second

def test_random_assignment_too_many_groups():
    with pytest.raises(ConfigError):
        random_assignment(2, 3, make_generator(0))

def test_assign_single_group():
    data, _ = simulate_group_panel(FAR[:1], [1, 1, 1], 5, INTERCEPT_SPEC)
    assert assign_groups(data, FAR[:1], INTERCEPT_SPEC) == GroupAssignment([1, 1, 1])

def test_assign_separated_groups():
    data, truth = simulate_group_panel(FAR, [2, 1, 2], 10, INTERCEPT_SPEC, seed=3)
    assert assign_groups(data, FAR, INTERCEPT_SPEC) == truth

def test_tie_goes_to_lower_label():
    data, _ = simulate_group_panel(FAR[:1], [1, 1], 5, INTERCEPT_SPEC)
    duplicated = [FAR[1], FAR[0], FAR[0]]
    assignment = assign_groups(data, duplicated, INTERCEPT_SPEC)
    assert assignment.to_list() == [2, 2]

def test_unsupported_individual():
    # group 1 covers (-inf, 2], group 2 covers [18, inf)
    coeffs = [intercepts(0.0, 1.0, -0.5), intercepts(20.0, 1.0, 0.5)]
    data = PanelData(np.array([[0.0, 10.0], [19.0, 25.0]]))
    with pytest.warns(UserWarning, match=r'\[0\]'):
        assignment = assign_groups(data, coeffs, INTERCEPT_SPEC)
    assert assignment.to_list() == [1, 2]

def test_best_groups_counts():
    matrix = np.array([[-np.inf, -np.inf], [-1.0, -2.0]])
    counts = np.array([[1, 3], [2, 2]])
    with pytest.warns(UserWarning):
        labels, unsupported = best_groups(matrix, counts)
    assert labels.tolist() == [1, 0]
    assert unsupported.tolist() == [0]


@pytest.fixture(scope='module')
def two_group_fit():
    data, truth = simulate_group_panel(FAR, [1, 2, 1, 2], 30, INTERCEPT_SPEC, seed=9)
    return fit_grouped_panel(data, truth, INTERCEPT_SPEC)

def test_canonical_is_identity(two_group_fit):
    assert canonicalize_labels(two_group_fit) is two_group_fit

def test_swap_is_undone(two_group_fit):
    swapped = two_group_fit.relabel([1, 0])
    assert swapped.assignment.to_list() == [2, 1, 2, 1]
    restored = canonicalize_labels(swapped)
    assert restored.assignment == two_group_fit.assignment
    assert restored.loglik == two_group_fit.loglik
    for before, after in zip(two_group_fit.coefficients, restored.coefficients):
        np.testing.assert_array_equal(before.flatten(), after.flatten())
    np.testing.assert_array_equal(restored.covariance[1], two_group_fit.covariance[1])

def test_orbit_invariance():
    data, truth = simulate_group_panel(
        [intercepts(float(10 * g), 1.0, 0.1) for g in range(3)],
        [3, 1, 2, 1, 3, 2], 20, INTERCEPT_SPEC, seed=2
    )
    result = fit_grouped_panel(data, truth, INTERCEPT_SPEC)
    canonical = canonicalize_labels(result)
    assert canonical.assignment.to_list() == [1, 2, 3, 2, 1, 3]
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]):
        again = canonicalize_labels(result.relabel(order))
        assert again.assignment == canonical.assignment
        for a, b in zip(again.coefficients, canonical.coefficients):
            np.testing.assert_array_equal(a.flatten(), b.flatten())
