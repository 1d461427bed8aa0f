import math

import pytest

from ExtremePanel.panel import FitResult, GroupAssignment
from ExtremePanel.regression import GroupCoefficients
from ExtremePanel.selection import bic, result_bic


def test_bic_trivial():
    assert bic(0.0, 1, 3, 1, 1) == 0.0

def test_bic_application_size():
    value = bic(-4065.24, 4, 5, 48, 69)
    assert value == pytest.approx(8130.48 + 20 * math.log(3312))
    assert value == pytest.approx(8292.68, abs=0.1)

def test_bic_penalty_linear():
    base = bic(-10.0, 2, 3, 5, 7) - 20.0
    doubled = bic(-10.0, 2, 6, 5, 7) - 20.0
    assert doubled == pytest.approx(2 * base)

def test_bic_increasing_in_groups():
    values = [bic(-100.0, g, 3, 10, 10) for g in range(1, 6)]
    assert values == sorted(values)
    assert len(set(values)) == 5

def test_result_bic_uses_realized_groups():
    coeffs = GroupCoefficients([0.0], [0.0], [0.1])
    result = FitResult([coeffs, coeffs], GroupAssignment([1, 2]), -50.0,
                       [None, None], [None, None], n_obs=40)
    assert result_bic(result) == pytest.approx(100.0 + math.log(40) * 3 * 2)
