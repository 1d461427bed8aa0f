"""Generalized Pareto distribution of threshold excesses."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..utils import DomainError, validate_probability
from .gev import XI_EPS, _as_output, _validate_observation, shape_derivative


@dataclass(frozen=True)
class GpParams:
    """Scale and shape of a GP distribution (scalars or broadcastable arrays).

    Raises:
        DomainError: If a field is not finite or ``sigma`` is not positive.
    """
    sigma: float | np.ndarray
    xi: float | np.ndarray

    def __post_init__(self):
        for name in ('sigma', 'xi'):
            if not np.all(np.isfinite(getattr(self, name))):
                raise DomainError(f"GP parameter {name} must be finite")
        if not np.all(np.asarray(self.sigma) > 0):
            raise DomainError("GP scale sigma must be positive")

    def as_tuple(self) -> tuple:
        return self.sigma, self.xi


def _excess_terms(z: np.ndarray, sigma: np.ndarray, xi: np.ndarray) -> tuple:
    u = z / sigma
    exponential = np.abs(xi) < XI_EPS
    safe_xi = np.where(exponential, 1.0, xi)
    xu = np.where(exponential, 0.0, xi * u)
    t = 1.0 + xu
    b = np.where(exponential, u, np.log1p(xu) / safe_xi)
    return u, t, b, exponential

def logpdf(z, sigma, xi) -> np.ndarray:
    """Log-density of an excess; ``-inf`` outside the support."""
    z, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (z, sigma, xi))
    )
    with np.errstate(all='ignore'):
        _, t, b, _ = _excess_terms(z, sigma, xi)
        inside = (z >= 0) & (t > 0)
        value = -np.log(sigma) - np.log(np.where(inside, t, 1.0)) - b
        return np.where(inside, value, -np.inf)

def cdf(z, sigma, xi) -> np.ndarray:
    z, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (z, sigma, xi))
    )
    with np.errstate(all='ignore'):
        _, t, b, _ = _excess_terms(z, sigma, xi)
        value = np.where(t > 0, -np.expm1(-b), 1.0)
        return np.where(z <= 0, 0.0, value)

def quantile(prob, sigma, xi) -> np.ndarray:
    prob, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (prob, sigma, xi))
    )
    with np.errstate(all='ignore'):
        log_survival = np.log1p(-prob)
        exponential = np.abs(xi) < XI_EPS
        safe_xi = np.where(exponential, 1.0, xi)
        step = np.where(
            exponential, -log_survival, np.expm1(-xi * log_survival) / safe_xi
        )
        return sigma * step

def score(z, sigma, xi) -> np.ndarray:
    """Partial derivatives of :func:`logpdf` with respect to (sigma, xi).

    Returns:
        Array of shape ``broadcast_shape + (2,)``; NaN outside the support.
    """
    z, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (z, sigma, xi))
    )
    with np.errstate(all='ignore'):
        u, t, b, exponential = _excess_terms(z, sigma, xi)
        xi_eff = np.where(exponential, 0.0, xi)
        inside = (z >= 0) & (t > 0)
        d_sigma = (-1.0 + (xi_eff + 1.0) * u / t) / sigma
        d_xi = -u / t - shape_derivative(b, u, t, xi_eff)
        result = np.stack([d_sigma, d_xi], axis=-1)
        return np.where(inside[..., None], result, np.nan)


def gp_logpdf(z, params: GpParams):
    """Return ``log w(z | sigma, xi)``, ``-inf`` off the support.

    Raises:
        DomainError: If ``z`` is not finite.
    """
    _validate_observation(z, 'z')
    return _as_output(logpdf(z, *params.as_tuple()))

def gp_cdf(z, params: GpParams):
    _validate_observation(z, 'z')
    return _as_output(cdf(z, *params.as_tuple()))

def gp_quantile(prob, params: GpParams):
    """Return the ``prob``-quantile of the excess distribution.

    Raises:
        DomainError: If ``prob`` is outside (0, 1).
    """
    prob = validate_probability(prob, 'probability')
    return _as_output(quantile(prob, *params.as_tuple()))

def gp_score(z, params: GpParams):
    _validate_observation(z, 'z')
    return score(z, *params.as_tuple())
