from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..distribution import GevParams, GpParams
from ..utils import ConfigError, InvalidParameterError
from .link import Family, LinkSpec, coefficient_count


@dataclass(frozen=True, eq=False)
class GroupCoefficients:
    """Regression coefficients (kappa, gamma, delta) of one group."""
    kappa: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        for name in ('kappa', 'gamma', 'delta'):
            array = np.array(getattr(self, name), dtype=float).reshape(-1)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    def flatten(self) -> np.ndarray:
        return np.concatenate([self.kappa, self.gamma, self.delta])

    @classmethod
    def from_flat(cls, theta: np.ndarray, spec: LinkSpec) -> GroupCoefficients:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (coefficient_count(spec),):
            raise ConfigError(
                f"expected {coefficient_count(spec)} coefficients, got {theta.shape}"
            )
        n_kappa, n_gamma, _ = spec.sizes
        return cls(
            theta[:n_kappa],
            theta[n_kappa:n_kappa + n_gamma],
            theta[n_kappa + n_gamma:],
        )

    def check(self, spec: LinkSpec) -> None:
        """Raise :class:`ConfigError` if the lengths do not match ``spec``."""
        sizes = (len(self.kappa), len(self.gamma), len(self.delta))
        if sizes != spec.sizes:
            raise ConfigError(
                f"coefficient lengths {sizes} do not match the link spec {spec.sizes}"
            )

    def to_dict(self) -> dict:
        return {
            'kappa': self.kappa.tolist(),
            'gamma': self.gamma.tolist(),
            'delta': self.delta.tolist(),
        }

    @classmethod
    def from_dict(cls, values: dict) -> GroupCoefficients:
        return cls(values['kappa'], values['gamma'], values['delta'])


def linear_predictors(coeffs: GroupCoefficients, x: np.ndarray,
                      spec: LinkSpec) -> dict:
    """Return ``{parameter: eta}`` for every parameter of the family."""
    vectors = {'mu': coeffs.kappa, 'sigma': coeffs.gamma, 'xi': coeffs.delta}
    return {
        name: spec.design(x, name) @ vectors[name] for name in spec.parameters()
    }

def param_arrays(coeffs: GroupCoefficients, x: np.ndarray, spec: LinkSpec) -> dict:
    """Evaluate the linked parameters for covariates of shape ``(..., K)``.

    No positivity check is made; callers treat ``sigma <= 0`` as infeasible.

    Returns:
        ``{parameter: array of shape x.shape[:-1]}``.
    """
    eta = linear_predictors(coeffs, x, spec)
    return {name: spec.get_link(name).apply(value) for name, value in eta.items()}

def eval_params(coeffs: GroupCoefficients, x_row: np.ndarray,
                spec: LinkSpec) -> GevParams | GpParams:
    """Map one covariate row to the conditional distribution parameters.

    Args:
        coeffs: Coefficients of the group.
        x_row: Covariate row of length K.
        spec: Regression structure.

    Raises:
        ConfigError: On dimension mismatches or non-finite covariates.
        InvalidParameterError: If the scale is not positive.
    """
    x_row = np.asarray(x_row, dtype=float)
    if x_row.ndim != 1:
        raise ConfigError("x_row must be one-dimensional")
    if not np.all(np.isfinite(x_row)):
        raise ConfigError("x_row must be finite")
    spec.check_columns(len(x_row))
    coeffs.check(spec)
    params = param_arrays(coeffs, x_row, spec)
    sigma = float(params['sigma'])
    if not sigma > 0 or not np.isfinite(sigma):
        raise InvalidParameterError(f"linked scale {sigma} is not positive")
    if not np.isfinite(params['xi']):
        raise InvalidParameterError("linked shape is not finite")
    if spec.family is Family.GP:
        return GpParams(sigma, float(params['xi']))
    if not np.isfinite(params['mu']):
        raise InvalidParameterError("linked location is not finite")
    return GevParams(float(params['mu']), sigma, float(params['xi']))
