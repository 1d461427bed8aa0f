import pytest

from ExtremePanel.panel import OptimOption


def test_optim_option_defaults():
    option = OptimOption()
    assert option.max_iterations == 2000
    assert option.tolerance == 1e-8
    assert option.polish is True
    assert option.n_simplex_restarts == 2
    assert option.fd_step == 1e-5
    assert OptimOption.from_dict(option.to_dict()).to_dict() == option.to_dict()
    assert repr(option).startswith('OptimOption(max_iterations=2000')

def test_optim_option_coerces_strings():
    option = OptimOption(max_iterations='10', tolerance='1e-6', fd_step='1e-4')
    assert option.max_iterations == 10
    assert option.tolerance == 1e-6
    assert option.fd_step == 1e-4

@pytest.mark.parametrize('kwargs, message', [
    ({'max_iterations': 0}, 'max_iterations'),
    ({'max_iterations': 'many'}, 'max_iterations'),
    ({'tolerance': -1}, 'tolerance'),
    ({'tolerance': None}, 'tolerance'),
    ({'n_simplex_restarts': -1}, 'n_simplex_restarts'),
    ({'fd_step': 2}, 'fd_step'),
])
def test_optim_option_invalid(kwargs, message):
    with pytest.raises(ValueError, match=message):
        OptimOption(**kwargs)
