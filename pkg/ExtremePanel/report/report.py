"""Machine-readable reports of fits, BIC sweeps and simulation studies."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

from .._version import __version__
from ..panel import FitResult
from ..selection import SweepResult
from ..simulation import StudySummary
from ..utils import ConfigError, validate_type

FORMAT = 'extreme-panel-report'


class ReportKind(Enum):
    """Utility class for the result stored in a report."""
    FIT = 'fit'
    SWEEP = 'sweep'
    STUDY = 'study'


_RESULT_TYPES = {
    ReportKind.FIT: FitResult,
    ReportKind.SWEEP: SweepResult,
    ReportKind.STUDY: StudySummary,
}


@dataclass
class Report:
    """A result with the provenance written next to it.

    Attributes:
        result: :class:`FitResult`, :class:`SweepResult` or :class:`StudySummary`.
        version: Version of the software that wrote the report.
        seed: Seed of the run, if any.
        config: Echo of the model or DGP configuration.
        extra: Free-form additions such as the link spec or column names.
    """
    result: FitResult | SweepResult | StudySummary
    version: str = __version__
    seed: int | None = None
    config: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def kind(self) -> ReportKind:
        for kind, result_type in _RESULT_TYPES.items():
            if isinstance(self.result, result_type):
                return kind
        raise TypeError(f"unsupported result type {type(self.result).__name__}")

    def fit_result(self) -> FitResult:
        """The fit of a fit report, or the BIC-selected fit of a sweep report."""
        if isinstance(self.result, SweepResult):
            return self.result.best
        if isinstance(self.result, FitResult):
            return self.result
        raise ConfigError("a study report holds no fitted model")

    def to_dict(self) -> dict:
        return {
            'format': FORMAT,
            'kind': self.kind.value,
            'version': self.version,
            'seed': self.seed,
            'config': self.config,
            'extra': self.extra,
            'result': self.result.to_dict(),
        }

    @classmethod
    def from_dict(cls, values: dict) -> Report:
        if not isinstance(values, dict) or values.get('format') != FORMAT:
            raise ConfigError("not an ExtremePanel report")
        try:
            kind = ReportKind(values['kind'])
            result = _RESULT_TYPES[kind].from_dict(values['result'])
        except (KeyError, TypeError, ValueError) as error:
            raise ConfigError(f"malformed report: {error!r}") from None
        return cls(
            result=result,
            version=values.get('version', ''),
            seed=values.get('seed'),
            config=values.get('config'),
            extra=dict(values.get('extra') or {}),
        )


def write_fit_report(result: FitResult | SweepResult | StudySummary,
                     path: str,
                     seed: int | None = None,
                     config: dict | None = None,
                     extra: dict | None = None) -> Report:
    """Serialize ``result`` with its provenance to a JSON file.

    Floats are written with their shortest round-trip representation.

    Raises:
        ConfigError: If ``path`` cannot be written.
    """
    validate_type(result, tuple(_RESULT_TYPES.values()), 'result')
    report = Report(result, seed=seed, config=config, extra=dict(extra or {}))
    try:
        with open(path, 'w', encoding='utf-8') as file:
            json.dump(report.to_dict(), file, indent=2)
    except OSError as error:
        raise ConfigError(f"cannot write report {path}: {error.strerror}") from None
    return report

def read_fit_report(path: str) -> Report:
    """Read a report written by :func:`write_fit_report`.

    Raises:
        ConfigError: If the file is unreadable or not a report.
    """
    try:
        with open(path, encoding='utf-8') as file:
            values = json.load(file)
    except OSError as error:
        raise ConfigError(f"cannot read report {path}: {error.strerror}") from None
    except json.JSONDecodeError as error:
        raise ConfigError(f"{path}: {error}") from None
    return Report.from_dict(values)
