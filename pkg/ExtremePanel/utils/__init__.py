from .check import (
    validate_positive_int,
    validate_probability,
    validate_type,
)
from .exception import (
    ConfigError,
    DomainError,
    ExtremePanelError,
    FitError,
    InvalidParameterError,
    LikelihoodError,
    NumericalRankError,
    ParseError,
    UnderdeterminedError,
)
from .seed import derive_seed, make_generator, spawn_generators, spawn_seeds

__all__ = [
    'validate_type', 'validate_probability',
    'validate_positive_int',
    'make_generator', 'spawn_generators', 'spawn_seeds', 'derive_seed',
    'ExtremePanelError', 'DomainError', 'InvalidParameterError',
    'LikelihoodError', 'ConfigError', 'ParseError', 'UnderdeterminedError',
    'FitError', 'NumericalRankError',
]
