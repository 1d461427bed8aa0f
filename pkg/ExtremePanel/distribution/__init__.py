from . import gev, gp
from .gev import (
    XI_EPS,
    GevParams,
    gev_cdf,
    gev_logpdf,
    gev_quantile,
    gev_score,
    return_level,
)
from .gp import GpParams, gp_cdf, gp_logpdf, gp_quantile, gp_score

__all__ = [
    'gev', 'gp', 'XI_EPS',
    'GevParams', 'gev_logpdf', 'gev_cdf', 'gev_quantile', 'return_level',
    'gev_score',
    'GpParams', 'gp_logpdf', 'gp_cdf', 'gp_quantile', 'gp_score',
]
