import pytest

from ExtremePanel.em import EmOption, resolve_threads
from ExtremePanel.panel import OptimOption
from ExtremePanel.utils import ConfigError


def test_em_option_defaults():
    option = EmOption()
    assert option.max_em_iterations == 100
    assert option.n_restarts == 10
    assert option.seed == 0
    assert option.loglik_tolerance == 1e-6
    assert isinstance(option.optim, OptimOption)
    assert option.n_threads is None

def test_em_option_dict():
    option = EmOption(max_em_iterations='20', n_restarts=3, seed=5,
                      optim=OptimOption(max_iterations=100))
    values = option.to_dict()
    assert values['max_iterations'] == 20
    assert values['restarts'] == 3
    again = EmOption.from_dict(values)
    assert again.to_dict() == values
    assert EmOption.from_dict({}).n_restarts == 10

@pytest.mark.parametrize('kwargs, message', [
    ({'max_em_iterations': 0}, 'max_em_iterations'),
    ({'n_restarts': 0}, 'n_restarts'),
    ({'n_restarts': 'x'}, 'n_restarts'),
    ({'seed': -1}, 'seed'),
    ({'loglik_tolerance': -1e-3}, 'loglik_tolerance'),
    ({'n_threads': 0}, 'n_threads'),
])
def test_em_option_invalid(kwargs, message):
    with pytest.raises(ValueError, match=message):
        EmOption(**kwargs)

def test_em_option_optim_type():
    with pytest.raises(TypeError):
        EmOption(optim={'max_iterations': 10})

def test_resolve_threads(monkeypatch, mocker):
    assert resolve_threads(3) == 3
    monkeypatch.setenv('EXTREME_PANEL_THREADS', '5')
    assert resolve_threads() == 5
    assert EmOption().get_n_threads() == 5
    monkeypatch.delenv('EXTREME_PANEL_THREADS')
    mocker.patch('os.cpu_count', return_value=7)
    assert resolve_threads() == 7
    with pytest.raises(ConfigError, match='Invalid thread count'):
        resolve_threads('many')

@pytest.mark.parametrize('value', ['abc', '0', '-3', '2.5'])
def test_invalid_threads_env(monkeypatch, value):
    monkeypatch.setenv('EXTREME_PANEL_THREADS', value)
    assert resolve_threads(4) == 4
    with pytest.raises(ConfigError, match='Invalid thread count'):
        resolve_threads()
