from .exceedance import (
    ExceedancePanel,
    empirical_threshold,
    extract_exceedances,
    tail_quantiles,
)
from .gp_em import em_fit_gp, fit_grouped_gp, select_groups_gp

__all__ = [
    'ExceedancePanel', 'empirical_threshold', 'extract_exceedances', 'tail_quantiles',
    'em_fit_gp', 'fit_grouped_gp', 'select_groups_gp',
]
