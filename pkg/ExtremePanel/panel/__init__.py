from .covariance import (
    group_sandwich,
    hessian,
    inverse_hessian_covariance,
    sandwich_covariance,
    score_vector,
)
from .data import GroupAssignment, PanelData
from .exceedance import conditional_quantiles, exceedance_rates
from .likelihood import (
    cell_loglik,
    cell_scores,
    group_loglik,
    in_support_counts,
    individual_loglik_matrix,
    panel_loglik,
    period_scores,
    summed_scores,
)
from .option import OptimOption
from .qml import (
    fit_grouped_panel,
    fit_qml_group,
    group_covariances,
    initial_coefficients,
    panel_sample_size,
)
from .result import FitResult, standard_errors

__all__ = [
    'PanelData', 'GroupAssignment', 'OptimOption', 'FitResult',
    'cell_loglik', 'cell_scores', 'group_loglik', 'individual_loglik_matrix',
    'in_support_counts', 'panel_loglik', 'period_scores', 'summed_scores',
    'score_vector', 'hessian', 'group_sandwich', 'sandwich_covariance',
    'inverse_hessian_covariance', 'standard_errors',
    'initial_coefficients', 'fit_qml_group', 'fit_grouped_panel',
    'group_covariances', 'panel_sample_size',
    'conditional_quantiles', 'exceedance_rates',
]
