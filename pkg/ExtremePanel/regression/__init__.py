from .coefficients import (
    GroupCoefficients,
    eval_params,
    linear_predictors,
    param_arrays,
)
from .link import Family, LinkKind, LinkSpec, coefficient_count

__all__ = [
    'LinkKind', 'Family', 'LinkSpec', 'coefficient_count',
    'GroupCoefficients', 'eval_params', 'param_arrays', 'linear_predictors',
]
