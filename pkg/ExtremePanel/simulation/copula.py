from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import ndtr

from ..utils import ConfigError, validate_positive_int, validate_type

_LOW = np.nextafter(0.0, 1.0)
_HIGH = np.nextafter(1.0, 0.0)


class CopulaKind(Enum):
    """Utility class for the cross-sectional dependence of a simulated panel."""
    INDEPENDENCE = 'independence'
    GAUSSIAN = 'gaussian'
    GUMBEL = 'gumbel'


@dataclass(frozen=True)
class CopulaSpec:
    """Exchangeable copula of one cross-section.

    Attributes:
        kind: :class:`CopulaKind`.
        parameter: Correlation ``rho`` in [0, 1) for the Gaussian copula,
            ``alpha >= 1`` for the Gumbel copula, unused for independence.
    """
    kind: CopulaKind = CopulaKind.INDEPENDENCE
    parameter: float | None = None

    def __post_init__(self):
        if not isinstance(self.kind, CopulaKind):
            object.__setattr__(self, 'kind', CopulaKind(self.kind))
        if self.kind is CopulaKind.INDEPENDENCE:
            object.__setattr__(self, 'parameter', None)
            return
        if self.parameter is None:
            raise ConfigError(f"{self.kind.value} copula needs a parameter")
        parameter = float(self.parameter)
        if self.kind is CopulaKind.GAUSSIAN and not 0.0 <= parameter < 1.0:
            raise ConfigError(f"Gaussian correlation must lie in [0, 1), got {parameter}")
        if self.kind is CopulaKind.GUMBEL and not parameter >= 1.0:
            raise ConfigError(f"Gumbel alpha must be at least 1, got {parameter}")
        object.__setattr__(self, 'parameter', parameter)

    @classmethod
    def independence(cls) -> CopulaSpec:
        return cls(CopulaKind.INDEPENDENCE)

    @classmethod
    def gaussian(cls, rho: float) -> CopulaSpec:
        return cls(CopulaKind.GAUSSIAN, rho)

    @classmethod
    def gumbel(cls, alpha: float) -> CopulaSpec:
        return cls(CopulaKind.GUMBEL, alpha)

    def kendall_tau(self) -> float:
        """Pairwise Kendall's tau implied by the copula."""
        if self.kind is CopulaKind.GAUSSIAN:
            return 2.0 / math.pi * math.asin(self.parameter)
        if self.kind is CopulaKind.GUMBEL:
            return 1.0 - 1.0 / self.parameter
        return 0.0

    def to_dict(self) -> dict:
        return {'kind': self.kind.value, 'parameter': self.parameter}

    @classmethod
    def from_dict(cls, values: dict) -> CopulaSpec:
        return cls(values.get('kind', 'independence'), values.get('parameter'))


def positive_stable(index: float, size, rng: np.random.Generator) -> np.ndarray:
    """Positive stable variates with Laplace transform ``exp(-s ** index)``.

    Kanter's representation from one uniform angle and one unit exponential.
    """
    angle = rng.uniform(0.0, np.pi, size=size)
    exponential = rng.standard_exponential(size=size)
    if index == 1.0:
        return np.ones(size)
    first = np.sin(index * angle) / np.sin(angle) ** (1.0 / index)
    second = (np.sin((1.0 - index) * angle) / exponential) ** ((1.0 - index) / index)
    return first * second

def sample_copula(spec: CopulaSpec, n: int, rng: np.random.Generator,
                  n_draws: int | None = None) -> np.ndarray:
    """Draw cross-sections with uniform margins from ``spec``.

    Args:
        spec: Copula of the cross-section.
        n: Dimension of one cross-section.
        rng: Random generator.
        n_draws: Number of independent cross-sections; one if None.

    Returns:
        Array of shape (n,) or (n_draws, n), strictly inside (0, 1).
    """
    validate_type(spec, CopulaSpec, 'spec')
    validate_type(rng, np.random.Generator, 'rng')
    n = validate_positive_int(n, 'n')
    rows = 1 if n_draws is None else validate_positive_int(n_draws, 'n_draws')

    if spec.kind is CopulaKind.GAUSSIAN:
        rho = spec.parameter
        common = rng.standard_normal((rows, 1))
        noise = rng.standard_normal((rows, n))
        u = ndtr(math.sqrt(rho) * common + math.sqrt(1.0 - rho) * noise)
    elif spec.kind is CopulaKind.GUMBEL:
        index = 1.0 / spec.parameter
        frailty = positive_stable(index, (rows, 1), rng)
        exponential = rng.standard_exponential((rows, n))
        u = np.exp(-(exponential / frailty) ** index)
    else:
        u = rng.uniform(size=(rows, n))
    u = np.clip(u, _LOW, _HIGH)
    return u[0] if n_draws is None else u
