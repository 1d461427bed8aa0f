from .criterion import bic, result_bic
from .sweep import SweepResult, choose_g_star, select_groups, sweep_group_counts

__all__ = [
    'bic', 'result_bic', 'SweepResult', 'choose_g_star',
    'sweep_group_counts', 'select_groups',
]
