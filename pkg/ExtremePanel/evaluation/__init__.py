from .diagnostic import gumbel_residuals, qq_points
from .metric import exceedance_summary, mrae, rand_index

__all__ = [
    'rand_index', 'mrae', 'exceedance_summary',
    'gumbel_residuals', 'qq_points',
]
