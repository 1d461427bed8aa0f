"""Generalized extreme value distribution.

The array kernels (:func:`logpdf`, :func:`cdf`, :func:`quantile`,
:func:`score`) take plain arrays, broadcast their arguments and skip
validation; they are the building blocks of the panel likelihood. The
``gev_*`` functions validate their inputs and accept :class:`GevParams`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..utils import DomainError, validate_probability

XI_EPS = 1e-8
SERIES_LIMIT = 1e-3


@dataclass(frozen=True)
class GevParams:
    """Location, scale and shape of a GEV distribution.

    Fields may be scalars or arrays broadcastable against each other.

    Raises:
        DomainError: If a field is not finite or ``sigma`` is not positive.
    """
    mu: float | np.ndarray
    sigma: float | np.ndarray
    xi: float | np.ndarray

    def __post_init__(self):
        for name in ('mu', 'sigma', 'xi'):
            if not np.all(np.isfinite(getattr(self, name))):
                raise DomainError(f"GEV parameter {name} must be finite")
        if not np.all(np.asarray(self.sigma) > 0):
            raise DomainError("GEV scale sigma must be positive")

    def as_tuple(self) -> tuple:
        return self.mu, self.sigma, self.xi

    def upper_endpoint(self) -> float | np.ndarray:
        """Return ``mu - sigma / xi`` where ``xi < 0`` and ``inf`` elsewhere."""
        xi = np.asarray(self.xi, dtype=float)
        with np.errstate(divide='ignore'):
            bound = np.where(
                xi <= -XI_EPS, self.mu - self.sigma / np.where(xi == 0, 1, xi), np.inf
            )
        return _as_output(bound)


def _as_output(value):
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return float(value)
    return value

def _shape_terms(z: np.ndarray, xi: np.ndarray) -> tuple:
    """Return ``(t, a, gumbel)`` with ``t = 1 + xi z`` and ``a = log(t) / xi``.

    On the Gumbel branch ``t`` is 1 and ``a`` is ``z``. Off the support
    ``t <= 0`` and ``a`` is NaN.
    """
    gumbel = np.abs(xi) < XI_EPS
    safe_xi = np.where(gumbel, 1.0, xi)
    xz = np.where(gumbel, 0.0, xi * z)
    t = 1.0 + xz
    a = np.where(gumbel, z, np.log1p(xz) / safe_xi)
    return t, a, gumbel

def shape_derivative(a: np.ndarray, z: np.ndarray, t: np.ndarray,
                     xi: np.ndarray) -> np.ndarray:
    """Return the derivative of ``log(1 + xi z) / xi`` with respect to ``xi``.

    A three-term series replaces the closed form when ``|xi z|`` is small.
    """
    xz = xi * z
    series = np.abs(xz) < SERIES_LIMIT
    safe_xi = np.where(series, 1.0, xi)
    closed = (-a + z / np.where(series, 1.0, t)) / safe_xi
    expansion = z * z * (-0.5 + (2.0 / 3.0) * xz - 0.75 * xz * xz)
    return np.where(series, expansion, closed)

def logpdf(y, mu, sigma, xi) -> np.ndarray:
    """Log-density; ``-inf`` outside the support."""
    y, mu, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (y, mu, sigma, xi))
    )
    with np.errstate(all='ignore'):
        z = (y - mu) / sigma
        t, a, _ = _shape_terms(z, xi)
        inside = t > 0
        value = -np.log(sigma) - np.log(np.where(inside, t, 1.0)) - a - np.exp(-a)
        return np.where(inside, value, -np.inf)

def cdf(y, mu, sigma, xi) -> np.ndarray:
    y, mu, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (y, mu, sigma, xi))
    )
    with np.errstate(all='ignore'):
        z = (y - mu) / sigma
        t, a, _ = _shape_terms(z, xi)
        inside = t > 0
        outside = np.where(xi > 0, 0.0, 1.0)
        return np.where(inside, np.exp(-np.exp(-a)), outside)

def quantile(prob, mu, sigma, xi) -> np.ndarray:
    prob, mu, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (prob, mu, sigma, xi))
    )
    with np.errstate(all='ignore'):
        log_log = np.log(-np.log(prob))
        gumbel = np.abs(xi) < XI_EPS
        safe_xi = np.where(gumbel, 1.0, xi)
        step = np.where(gumbel, -log_log, np.expm1(-xi * log_log) / safe_xi)
        return mu + sigma * step

def score(y, mu, sigma, xi) -> np.ndarray:
    """Partial derivatives of :func:`logpdf` with respect to (mu, sigma, xi).

    Returns:
        Array of shape ``broadcast_shape + (3,)``; NaN outside the support.
    """
    y, mu, sigma, xi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (y, mu, sigma, xi))
    )
    with np.errstate(all='ignore'):
        z = (y - mu) / sigma
        t, a, gumbel = _shape_terms(z, xi)
        xi_eff = np.where(gumbel, 0.0, xi)
        inside = t > 0
        tail = np.exp(-a)
        d_z = (tail - (xi_eff + 1.0)) / t
        d_mu = -d_z / sigma
        d_sigma = -1.0 / sigma - d_z * z / sigma
        d_xi = -z / t - (1.0 - tail) * shape_derivative(a, z, t, xi_eff)
        result = np.stack([d_mu, d_sigma, d_xi], axis=-1)
        return np.where(inside[..., None], result, np.nan)


def _validate_observation(y, name: str = 'y') -> None:
    if not np.all(np.isfinite(y)):
        raise DomainError(f"{name} must be finite")

def gev_logpdf(y, params: GevParams):
    """Return ``log h(y | mu, sigma, xi)``.

    Args:
        y: Observation(s).
        params: Distribution parameters.

    Returns:
        The log-density, ``-inf`` for observations outside the support.

    Raises:
        DomainError: If ``y`` is not finite.
    """
    _validate_observation(y)
    return _as_output(logpdf(y, *params.as_tuple()))

def gev_cdf(y, params: GevParams):
    """Return ``H(y)``; 0 below the lower endpoint, 1 above the upper one."""
    _validate_observation(y)
    return _as_output(cdf(y, *params.as_tuple()))

def gev_quantile(prob, params: GevParams):
    """Return the ``prob``-quantile by the closed form.

    Raises:
        DomainError: If ``prob`` is outside (0, 1).
    """
    prob = validate_probability(prob, 'probability')
    return _as_output(quantile(prob, *params.as_tuple()))

def return_level(period, params: GevParams):
    """Return the level exceeded on average once every ``period`` blocks.

    Raises:
        DomainError: If ``period`` is not larger than 1.
    """
    period = np.asarray(period, dtype=float)
    if not np.all(np.isfinite(period) & (period > 1)):
        raise DomainError(f"return period must be > 1, got {period}")
    return gev_quantile(1.0 - 1.0 / period, params)

def gev_score(y, params: GevParams):
    """Gradient of :func:`gev_logpdf` with respect to (mu, sigma, xi)."""
    _validate_observation(y)
    return score(y, *params.as_tuple())
