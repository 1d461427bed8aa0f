from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

from ..em import EmOption, em_fit
from ..panel import FitResult, PanelData
from ..regression import LinkSpec
from ..utils import ConfigError, ExtremePanelError, FitError
from .criterion import result_bic

logger = logging.getLogger(__name__)


@dataclass
class SweepResult:
    """Fits and BIC values over a range of group counts.

    Attributes:
        fits: Fit per requested G.
        bic: BIC per requested G.
        g_star: Requested G with the smallest BIC, the smaller G on ties.
        failed: Error message per G whose every chain failed.
    """
    fits: dict[int, FitResult]
    bic: dict[int, float]
    g_star: int
    failed: dict[int, str] = field(default_factory=dict)

    @property
    def best(self) -> FitResult:
        return self.fits[self.g_star]

    def bic_table(self) -> list[dict]:
        """One row per fitted G with the realized group count."""
        return [
            {
                'G': g,
                'realized_groups': self.fits[g].n_groups,
                'loglik': self.fits[g].loglik,
                'bic': self.bic[g],
            }
            for g in sorted(self.fits)
        ]

    def to_dict(self) -> dict:
        return {
            'g_star': self.g_star,
            'bic_table': self.bic_table(),
            'fits': {str(g): fit.to_dict() for g, fit in sorted(self.fits.items())},
            'failed': {str(g): message for g, message in self.failed.items()},
        }

    @classmethod
    def from_dict(cls, values: dict) -> SweepResult:
        fits = {int(g): FitResult.from_dict(fit) for g, fit in values['fits'].items()}
        return cls(
            fits=fits,
            bic={row['G']: float(row['bic']) for row in values['bic_table']},
            g_star=int(values['g_star']),
            failed={int(g): m for g, m in values.get('failed', {}).items()},
        )


def choose_g_star(bic_values: dict[int, float]) -> int:
    """Return the G with minimal BIC; ties go to the smaller G."""
    best = None
    for g in sorted(bic_values):
        if best is None or bic_values[g] < bic_values[best]:
            best = g
    return best

def sweep_group_counts(g_max: int,
                       n_individuals: int,
                       fit: Callable[[int], FitResult]) -> SweepResult:
    """Fit every G in ``1..g_max`` with ``fit`` and pick the BIC minimizer.

    Raises:
        ConfigError: If ``g_max`` is not in ``1..N``.
        FitError: If no G could be fitted; it carries the traces of the
            failed chains.
    """
    if not 1 <= g_max <= n_individuals:
        raise ConfigError(f"g_max must lie in 1..{n_individuals}, got {g_max}")
    fits, bic_values, failed, traces = {}, {}, {}, []
    for g in range(1, g_max + 1):
        try:
            fits[g] = fit(g)
        except ConfigError:
            raise
        except ExtremePanelError as error:
            logger.warning('G=%d excluded: %s', g, error)
            failed[g] = str(error)
            if isinstance(error, FitError):
                traces.extend(error.traces)
            continue
        bic_values[g] = result_bic(fits[g])
        logger.info('G=%d: loglik %.4f, BIC %.4f', g, fits[g].loglik, bic_values[g])
    if not fits:
        raise FitError(f"no group count in 1..{g_max} could be fitted", traces=traces)
    return SweepResult(fits, bic_values, choose_g_star(bic_values), failed)

def select_groups(data: PanelData, spec: LinkSpec, g_max: int,
                  opts: EmOption | None = None) -> SweepResult:
    """Run the EM for ``G = 1..g_max`` and select G by BIC.

    A G whose every chain fails is reported in ``failed`` and excluded.
    """
    opts = opts or EmOption()
    return sweep_group_counts(
        g_max, data.n_individuals, lambda g: em_fit(data, g, spec, opts)
    )
