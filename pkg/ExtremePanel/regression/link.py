from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..utils import ConfigError


class LinkKind(Enum):
    """Utility class for the inverse link applied to a linear predictor."""
    IDENTITY = 'identity'
    EXP = 'exp'

    def apply(self, eta: np.ndarray) -> np.ndarray:
        if self is LinkKind.EXP:
            with np.errstate(over='ignore'):
                return np.exp(eta)
        return eta

    def derivative(self, eta: np.ndarray, value: np.ndarray) -> np.ndarray:
        """Return d link / d eta given ``value = apply(eta)``."""
        if self is LinkKind.EXP:
            return value
        return np.ones_like(eta)

    def inverse(self, value: float) -> float:
        if self is LinkKind.EXP:
            return float(np.log(value))
        return float(value)


class Family(Enum):
    """Utility class for the response distribution of the panel."""
    GEV = 'gev-panel'
    GP = 'gp-panel'


PARAMETERS = ('mu', 'sigma', 'xi')


@dataclass(frozen=True)
class LinkSpec:
    """Regression structure shared by all groups.

    Each parameter gets a link and the covariate columns entering its
    linear predictor; the intercept is implicit. GP panels have no
    location parameter, so ``mu_terms`` must be empty and no ``kappa``
    coefficients exist.

    Attributes:
        mu_link, sigma_link, xi_link: :class:`LinkKind` per parameter.
        mu_terms, sigma_terms, xi_terms: 0-based covariate column indices.
        family: :class:`Family` of the response.
        sigma_certified: Caller guarantees positive scale under an identity link.
    """
    mu_link: LinkKind = LinkKind.IDENTITY
    sigma_link: LinkKind = LinkKind.EXP
    xi_link: LinkKind = LinkKind.IDENTITY
    mu_terms: tuple = ()
    sigma_terms: tuple = ()
    xi_terms: tuple = ()
    family: Family = Family.GEV
    sigma_certified: bool = False
    _sizes: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ('mu_terms', 'sigma_terms', 'xi_terms'):
            terms = tuple(int(i) for i in getattr(self, name))
            if any(i < 0 for i in terms):
                raise ConfigError(f"{name} must hold non-negative column indices")
            if len(set(terms)) != len(terms):
                raise ConfigError(f"{name} contains duplicate columns")
            object.__setattr__(self, name, terms)
        for name in ('mu_link', 'sigma_link', 'xi_link'):
            if not isinstance(getattr(self, name), LinkKind):
                object.__setattr__(self, name, LinkKind(getattr(self, name)))
        if not isinstance(self.family, Family):
            object.__setattr__(self, 'family', Family(self.family))
        if self.sigma_link is LinkKind.IDENTITY and not self.sigma_certified:
            raise ConfigError(
                "sigma_link must be 'exp' unless sigma_certified is set"
            )
        if self.family is Family.GP and self.mu_terms:
            raise ConfigError("GP panels have no location terms")
        kappa = 0 if self.family is Family.GP else len(self.mu_terms) + 1
        object.__setattr__(
            self, '_sizes',
            (kappa, len(self.sigma_terms) + 1, len(self.xi_terms) + 1)
        )

    @property
    def sizes(self) -> tuple:
        """Lengths of (kappa, gamma, delta)."""
        return self._sizes

    def get_terms(self, parameter: str) -> tuple:
        return getattr(self, f'{parameter}_terms')

    def get_link(self, parameter: str) -> LinkKind:
        return getattr(self, f'{parameter}_link')

    def parameters(self) -> tuple:
        """Names of the distribution parameters carried by the family."""
        if self.family is Family.GP:
            return PARAMETERS[1:]
        return PARAMETERS

    def max_column(self) -> int:
        """Return the largest referenced covariate index, -1 if none."""
        terms = self.mu_terms + self.sigma_terms + self.xi_terms
        return max(terms, default=-1)

    def check_columns(self, n_covariates: int) -> None:
        """Raise :class:`ConfigError` if a term references a missing column."""
        if self.max_column() >= n_covariates:
            raise ConfigError(
                f"term index {self.max_column()} out of range for "
                f"{n_covariates} covariate column(s)"
            )

    def design(self, x: np.ndarray, parameter: str) -> np.ndarray:
        """Return the intercept-augmented design for ``parameter``.

        Args:
            x: Covariates of shape ``(..., K)``.

        Returns:
            Array of shape ``(..., 1 + len(terms))``.
        """
        x = np.asarray(x, dtype=float)
        terms = list(self.get_terms(parameter))
        ones = np.ones(x.shape[:-1] + (1,))
        return np.concatenate([ones, x[..., terms]], axis=-1)


def coefficient_count(spec: LinkSpec) -> int:
    """Return P, the number of regression coefficients per group."""
    return sum(spec.sizes)
