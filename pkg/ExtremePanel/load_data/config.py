from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from ..em import EmOption
from ..regression import Family, LinkKind, LinkSpec
from ..utils import ConfigError

PARAMETER_NAMES = ('mu', 'sigma', 'xi')
DEFAULT_LINKS = {'mu': 'identity', 'sigma': 'exp', 'xi': 'identity'}


class Transform(Enum):
    """Utility class for covariate transformations applied on load."""
    NONE = 'none'
    LOG = 'log'


@dataclass
class ModelConfig:
    """Model configuration file contents.

    Attributes:
        links: Link name per parameter.
        terms: Covariate column names entering each parameter.
        transforms: :class:`Transform` per covariate column.
        mode: :class:`Family`; GP panels are fitted to threshold excesses.
        p0: Threshold probability of GP panels.
        em: :class:`EmOption` of the fits.
        g_max: Largest group count of a BIC sweep.
        sigma_certified: Allow an identity scale link.
    """
    links: dict = field(default_factory=lambda: dict(DEFAULT_LINKS))
    terms: dict = field(default_factory=dict)
    transforms: dict = field(default_factory=dict)
    mode: Family = Family.GEV
    p0: float | None = None
    em: EmOption = field(default_factory=EmOption)
    g_max: int = 6
    sigma_certified: bool = False

    def __post_init__(self):
        try:
            self.mode = Family(self.mode)
            self.links = {
                name: LinkKind(self.links.get(name, DEFAULT_LINKS[name]))
                for name in PARAMETER_NAMES
            }
            self.transforms = {
                str(column): Transform(kind) for column, kind in self.transforms.items()
            }
        except ValueError as error:
            raise ConfigError(str(error)) from None
        unknown = set(self.terms) - set(PARAMETER_NAMES)
        if unknown:
            raise ConfigError(f"unknown parameter(s) in terms: {sorted(unknown)}")
        self.terms = {
            name: [str(column) for column in self.terms.get(name, [])]
            for name in PARAMETER_NAMES
        }
        if self.mode is Family.GP:
            if self.p0 is None or not 0.0 < float(self.p0) < 1.0:
                raise ConfigError(f"gp-panel mode needs p0 in (0, 1), got {self.p0}")
            self.p0 = float(self.p0)
            if self.terms['mu']:
                raise ConfigError("gp-panel mode has no location terms")
        if not isinstance(self.g_max, int) or self.g_max < 1:
            raise ConfigError(f"g_max must be a positive integer, got {self.g_max!r}")

    def referenced_columns(self) -> list[str]:
        columns = [c for name in PARAMETER_NAMES for c in self.terms[name]]
        return list(dict.fromkeys(columns))

    def link_spec(self, column_names: list[str]) -> LinkSpec:
        """Resolve the term names against the covariate columns of a panel.

        Raises:
            ConfigError: If a term names a column the panel lacks.
        """
        missing = [c for c in self.referenced_columns() if c not in column_names]
        if missing:
            raise ConfigError(f"column(s) {missing} not found in {column_names}")
        index = {name: k for k, name in enumerate(column_names)}
        return LinkSpec(
            mu_link=self.links['mu'],
            sigma_link=self.links['sigma'],
            xi_link=self.links['xi'],
            mu_terms=tuple(index[c] for c in self.terms['mu']),
            sigma_terms=tuple(index[c] for c in self.terms['sigma']),
            xi_terms=tuple(index[c] for c in self.terms['xi']),
            family=self.mode,
            sigma_certified=self.sigma_certified,
        )

    def to_dict(self) -> dict:
        values = {
            'links': {name: link.value for name, link in self.links.items()},
            'terms': {name: list(columns) for name, columns in self.terms.items()},
            'transforms': {c: kind.value for c, kind in self.transforms.items()},
            'mode': self.mode.value,
            'em': self.em.to_dict(),
            'g_max': self.g_max,
        }
        if self.p0 is not None:
            values['p0'] = self.p0
        if self.sigma_certified:
            values['sigma_certified'] = True
        return values

    @classmethod
    def from_dict(cls, values: dict) -> ModelConfig:
        if not isinstance(values, dict):
            raise ConfigError("model configuration must be a JSON object")
        try:
            em = EmOption.from_dict(values.get('em', {}))
        except ValueError as error:
            raise ConfigError(f"em: {error}") from None
        return cls(
            links=values.get('links', {}),
            terms=values.get('terms', {}),
            transforms=values.get('transforms', {}),
            mode=values.get('mode', Family.GEV.value),
            p0=values.get('p0'),
            em=em,
            g_max=values.get('g_max', 6),
            sigma_certified=bool(values.get('sigma_certified', False)),
        )

    @classmethod
    def load(cls, path: str) -> ModelConfig:
        """Read a JSON model configuration.

        Raises:
            ConfigError: If the file is not valid JSON or holds invalid values.
        """
        try:
            with open(path, encoding='utf-8') as file:
                values = json.load(file)
        except json.JSONDecodeError as error:
            raise ConfigError(f"{path}: {error}") from None
        return cls.from_dict(values)

    def save(self, path: str) -> None:
        with open(path, 'w', encoding='utf-8') as file:
            json.dump(self.to_dict(), file, indent=2)
