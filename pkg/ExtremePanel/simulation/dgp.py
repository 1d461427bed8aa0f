"""Copula-coupled GEV panels with a factor-model covariate."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

import numpy as np

from ..distribution import gev
from ..panel import GroupAssignment, PanelData, conditional_quantiles
from ..regression import GroupCoefficients, LinkSpec, param_arrays
from ..utils import ConfigError, validate_positive_int
from .copula import CopulaSpec, sample_copula

COLUMN_NAMES = ('x1', 'x2')
TRUE_PROB = 0.99


@dataclass(frozen=True)
class GroupParams:
    """True coefficients of one group.

    ``mu = kappa0 + kappa1 x1 + kappa2 x2``,
    ``log sigma = gamma0 + gamma1 x1 + gamma2 x2`` and ``xi = delta0``.
    """
    kappa0: float
    kappa1: float
    kappa2: float
    gamma0: float
    gamma1: float
    gamma2: float
    delta0: float

    def coefficients(self) -> GroupCoefficients:
        return GroupCoefficients(
            [self.kappa0, self.kappa1, self.kappa2],
            [self.gamma0, self.gamma1, self.gamma2],
            [self.delta0],
        )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, values: dict) -> GroupParams:
        try:
            return cls(**{f.name: float(values[f.name]) for f in fields(cls)})
        except (KeyError, TypeError, ValueError) as error:
            raise ConfigError(f"invalid group parameters {values!r}: {error}") from None


REFERENCE_GROUPS = (
    GroupParams(3.10, 2.40, 2.00, -0.05, 0.10, 0.17, 0.30),
    GroupParams(3.40, 1.40, 1.00, -0.15, 0.06, 0.07, 0.27),
    GroupParams(3.20, 1.10, 0.50, -0.20, 0.04, 0.02, 0.24),
    GroupParams(3.10, 1.70, 1.50, -0.10, 0.08, 0.12, 0.20),
)


@dataclass(frozen=True)
class CovariateParams:
    """Factor model ``x1 = omega + trend t / T + beta f_t + eps_it``.

    ``f_t ~ N(0, nu_f)`` is shared by all individuals and
    ``eps_it ~ N(0, nu_i)`` is idiosyncratic.
    """
    omega: float = -0.8
    trend: float = 0.4
    beta: float = 0.8
    nu_f: float = 0.5
    nu_i: float = 0.5

    def __post_init__(self):
        if not (self.nu_f > 0 and self.nu_i > 0):
            raise ConfigError("covariate variances nu_f and nu_i must be positive")

    def to_dict(self) -> dict:
        return {
            'omega': self.omega, 'lambda': self.trend, 'beta': self.beta,
            'nu_f': self.nu_f, 'nu_i': self.nu_i,
        }

    @classmethod
    def from_dict(cls, values: dict) -> CovariateParams:
        defaults = cls()
        return cls(
            omega=float(values.get('omega', defaults.omega)),
            trend=float(values.get('lambda', defaults.trend)),
            beta=float(values.get('beta', defaults.beta)),
            nu_f=float(values.get('nu_f', defaults.nu_f)),
            nu_i=float(values.get('nu_i', defaults.nu_i)),
        )


@dataclass(frozen=True)
class DgpConfig:
    """Data-generating process of a simulated panel.

    Attributes:
        group_params: True coefficients per group; ``G0`` is their count.
        covariate_params: Factor model of ``x1``.
        u_bounds: Uniform support of the time-invariant ``x2``.
        copula: Cross-sectional dependence of the GEV draws.
        n_individuals, n_periods: Panel size.
        seed: Seed of the simulation streams.

    Raises:
        ConfigError: On invalid bounds or sizes.
    """
    group_params: tuple = REFERENCE_GROUPS
    covariate_params: CovariateParams = field(default_factory=CovariateParams)
    u_bounds: tuple = (2.0, 6.0)
    copula: CopulaSpec = field(default_factory=CopulaSpec)
    n_individuals: int = 24
    n_periods: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'group_params', tuple(self.group_params))
        if not self.group_params:
            raise ConfigError("at least one group is required")
        lower, upper = (float(v) for v in self.u_bounds)
        if not lower < upper:
            raise ConfigError(f"u_bounds must satisfy lower < upper, got {self.u_bounds}")
        object.__setattr__(self, 'u_bounds', (lower, upper))
        try:
            n_individuals = validate_positive_int(self.n_individuals, 'N')
            n_periods = validate_positive_int(self.n_periods, 'T')
        except ValueError as error:
            raise ConfigError(str(error)) from None
        if n_individuals < self.n_groups:
            raise ConfigError(
                f"N={n_individuals} is smaller than the {self.n_groups} true groups"
            )
        object.__setattr__(self, 'n_individuals', n_individuals)
        object.__setattr__(self, 'n_periods', n_periods)
        object.__setattr__(self, 'seed', int(self.seed))

    @property
    def n_groups(self) -> int:
        """G0, the true number of groups."""
        return len(self.group_params)

    def true_assignment(self) -> GroupAssignment:
        """Contiguous blocks of ``N // G0`` individuals; the remainder joins
        the last group."""
        block = self.n_individuals // self.n_groups
        labels = np.minimum(np.arange(self.n_individuals) // block, self.n_groups - 1)
        return GroupAssignment.from_zero_based(labels, self.n_groups)

    def true_coefficients(self) -> list[GroupCoefficients]:
        return [params.coefficients() for params in self.group_params]

    def replace(self, **changes) -> DgpConfig:
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return DgpConfig(**values)

    def to_dict(self) -> dict:
        return {
            'groups': [params.to_dict() for params in self.group_params],
            'covariates': self.covariate_params.to_dict(),
            'u_bounds': list(self.u_bounds),
            'copula': self.copula.to_dict(),
            'N': self.n_individuals,
            'T': self.n_periods,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, values: dict) -> DgpConfig:
        defaults = cls()
        groups = values.get('groups')
        return cls(
            group_params=defaults.group_params if groups is None
            else tuple(GroupParams.from_dict(g) for g in groups),
            covariate_params=CovariateParams.from_dict(values.get('covariates', {})),
            u_bounds=tuple(values.get('u_bounds', defaults.u_bounds)),
            copula=CopulaSpec.from_dict(values.get('copula', {})),
            n_individuals=values.get('N', defaults.n_individuals),
            n_periods=values.get('T', defaults.n_periods),
            seed=values.get('seed', defaults.seed),
        )

    @classmethod
    def load(cls, path: str) -> DgpConfig:
        """Read a JSON DGP configuration.

        Raises:
            ConfigError: If the file is not valid JSON or holds invalid values.
        """
        try:
            with open(path, encoding='utf-8') as file:
                values = json.load(file)
        except json.JSONDecodeError as error:
            raise ConfigError(f"{path}: {error}") from None
        if not isinstance(values, dict):
            raise ConfigError(f"{path}: expected a JSON object")
        return cls.from_dict(values)

    def save(self, path: str) -> None:
        with open(path, 'w', encoding='utf-8') as file:
            json.dump(self.to_dict(), file, indent=2)


@dataclass
class SimulatedPanel:
    """A simulated panel with the truth that generated it."""
    data: PanelData
    coefficients: list[GroupCoefficients]
    assignment: GroupAssignment
    true_q99: np.ndarray

    def to_truth_dict(self) -> dict:
        return {
            'coefficients': [c.to_dict() for c in self.coefficients],
            'assignment': self.assignment.to_list(),
            'true_q99': self.true_q99.tolist(),
        }


def simulation_link_spec() -> LinkSpec:
    """Identity location and exponential scale on both covariates, constant shape."""
    return LinkSpec(mu_terms=(0, 1), sigma_terms=(0, 1))

def simulate_covariates(config: DgpConfig, rng: np.random.Generator) -> np.ndarray:
    """Draw the N x T x 2 covariate array of ``config``."""
    params = config.covariate_params
    n, n_periods = config.n_individuals, config.n_periods
    t = np.arange(1, n_periods + 1)
    factor = np.sqrt(params.nu_f) * rng.standard_normal(n_periods)
    noise = np.sqrt(params.nu_i) * rng.standard_normal((n, n_periods))
    x1 = params.omega + params.trend / n_periods * t + params.beta * factor + noise
    lower, upper = config.u_bounds
    x2 = np.repeat(rng.uniform(lower, upper, size=(n, 1)), n_periods, axis=1)
    return np.stack([x1, x2], axis=2)

def simulate_panel(config: DgpConfig, rng: np.random.Generator) -> SimulatedPanel:
    """Draw one panel of block maxima from ``config``.

    Each period gets one cross-sectional copula draw, mapped through the
    GEV quantile of every individual's conditional parameters.
    """
    spec = simulation_link_spec()
    x = simulate_covariates(config, rng)
    u = sample_copula(
        config.copula, config.n_individuals, rng, n_draws=config.n_periods
    ).T
    assignment = config.true_assignment()
    coeffs = config.true_coefficients()
    y = np.empty(u.shape)
    for group, group_coeffs in enumerate(coeffs, start=1):
        rows = assignment.members(group)
        params = param_arrays(group_coeffs, x[rows], spec)
        y[rows] = gev.quantile(u[rows], params['mu'], params['sigma'], params['xi'])
    data = PanelData(
        y, x,
        column_names=list(COLUMN_NAMES),
        individual_ids=[f'i{i + 1}' for i in range(config.n_individuals)],
        time_index=list(range(1, config.n_periods + 1)),
    )
    true_q99 = conditional_quantiles(data, coeffs, assignment, spec, TRUE_PROB)
    return SimulatedPanel(data, coeffs, assignment, true_q99)
