import numpy as np
import pytest

from ExtremePanel.utils import DomainError, check


def test__get_type_name():
    assert check._get_type_name(int) == 'builtins.int'
    assert check._get_type_name(np.ndarray) == 'numpy.ndarray'


def test_validate_type():
    check.validate_type(1, int, 'test')
    check.validate_type(1, (float, int), 'test')

    with pytest.raises(
        TypeError,
        match=(
            'test must be an instance of builtins.float, '
            'got <class \'int\'> instead.'
        )
    ):
        check.validate_type(1, float, 'test')
    with pytest.raises(
        TypeError,
        match=(
            'test must be an instance of builtins.float or builtins.int, '
            'got <class \'str\'> instead.'
        )
    ):
        check.validate_type('1', (float, int), 'test')


@pytest.mark.parametrize('value, expected', [
    (0.5, 0.5), ('0.25', 0.25), (1e-9, 1e-9),
    (0, None), (1, None), (-0.1, None), ('a', None), (None, None),
])
def test_validate_probability(value, expected):
    if expected is None:
        with pytest.raises(DomainError, match='prob'):
            check.validate_probability(value, 'prob')
    else:
        assert check.validate_probability(value, 'prob') == expected

def test_validate_probability_array():
    result = check.validate_probability([0.1, 0.9], 'prob')
    assert isinstance(result, np.ndarray)
    np.testing.assert_array_equal(result, [0.1, 0.9])
    with pytest.raises(DomainError, match=r'prob must lie in \(0, 1\)'):
        check.validate_probability(np.array([0.5, 1.0]), 'prob')
    with pytest.raises(DomainError):
        check.validate_probability([0.5, np.nan], 'prob')


@pytest.mark.parametrize('value, expected', [
    (1, 1), (4.0, 4), ('3', 3),
    (0, None), (-2, None), (2.5, None), ('x', None), (float('inf'), None),
])
def test_validate_positive_int(value, expected):
    if expected is None:
        with pytest.raises(ValueError, match='groups'):
            check.validate_positive_int(value, 'groups')
    else:
        assert check.validate_positive_int(value, 'groups') == expected
