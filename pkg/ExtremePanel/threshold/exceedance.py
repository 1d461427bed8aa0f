from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from ..panel import GroupAssignment, PanelData, conditional_quantiles
from ..regression import GroupCoefficients, LinkSpec
from ..utils import ConfigError, DomainError, validate_probability

logger = logging.getLogger(__name__)


@dataclass
class ExceedancePanel:
    """Threshold excesses of a raw panel, kept on its N x T grid.

    Attributes:
        data: Excesses over each individual's threshold; every other
            cell is missing.
        thresholds: Threshold of every kept individual.
        p0: Probability level of the thresholds.
        excluded: Identifiers of individuals dropped for lack of exceedances.
    """
    data: PanelData
    thresholds: np.ndarray
    p0: float
    excluded: list = field(default_factory=list)

    def __post_init__(self):
        self.thresholds = np.asarray(self.thresholds, dtype=float)
        if self.thresholds.shape != (self.data.n_individuals,):
            raise ConfigError("one threshold per individual is required")
        if not np.all(np.isfinite(self.thresholds)):
            raise ConfigError("thresholds must be finite")
        if np.any(self.data.y[self.data.mask] <= 0):
            raise ConfigError("excesses must be positive")

    @property
    def n_exceedances(self) -> int:
        return self.data.n_observed

    def exceedances(self, individual: int) -> list[tuple]:
        """(excess, covariate row) pairs of one individual in time order."""
        cells = np.flatnonzero(self.data.mask[individual])
        return [
            (float(self.data.y[individual, t]), self.data.x[individual, t])
            for t in cells
        ]


def empirical_threshold(values: np.ndarray, p0: float) -> float:
    """Order statistic at rank ``ceil(p0 n)`` of the sorted ``values``."""
    ordered = np.sort(values)
    rank = max(1, math.ceil(p0 * len(ordered) - 1e-12))
    return float(ordered[rank - 1])

def extract_exceedances(raw: PanelData, p0: float) -> ExceedancePanel:
    """Keep the observations strictly above each individual's empirical
    ``p0``-quantile, as excesses over it.

    Individuals without any exceedance are dropped with a warning.

    Raises:
        DomainError: If ``p0`` is outside (0, 1).
        ConfigError: If no individual has an exceedance.
    """
    p0 = validate_probability(p0, 'p0')
    kept, thresholds, excluded = [], [], []
    excess = np.full(raw.y.shape, np.nan)
    for i in range(raw.n_individuals):
        observed = raw.y[i, raw.mask[i]]
        if len(observed) == 0:
            excluded.append(raw.individual_ids[i])
            continue
        threshold = empirical_threshold(observed, p0)
        above = raw.mask[i] & (np.where(raw.mask[i], raw.y[i], -np.inf) > threshold)
        if not np.any(above):
            excluded.append(raw.individual_ids[i])
            continue
        excess[i, above] = raw.y[i, above] - threshold
        kept.append(i)
        thresholds.append(threshold)

    if excluded:
        warnings.warn(
            f"{len(excluded)} individual(s) without exceedances excluded: {excluded}",
            UserWarning, stacklevel=2,
        )
    if not kept:
        raise ConfigError(f"no individual has an exceedance at p0={p0}")
    data = PanelData(
        excess[kept], raw.x[kept],
        column_names=raw.get_column_names(),
        individual_ids=[raw.individual_ids[i] for i in kept],
        time_index=raw.get_time_index(),
    )
    logger.info('%d exceedance(s) of %d individual(s) at p0=%g',
                data.n_observed, len(kept), p0)
    return ExceedancePanel(data, np.array(thresholds), p0, excluded)

def tail_quantiles(data: PanelData,
                   coeffs: Sequence[GroupCoefficients],
                   assignment: GroupAssignment,
                   spec: LinkSpec,
                   thresholds: np.ndarray,
                   p0: float,
                   prob: float) -> np.ndarray:
    """Conditional ``prob``-quantiles of the raw series from a fit to its
    threshold excesses.

    Above its threshold ``u`` an individual's series has tail probability
    ``(1 - p0) * (1 - W(z))``, so its ``prob``-quantile is ``u`` plus the
    excess quantile at level ``(prob - p0) / (1 - p0)``.

    Raises:
        DomainError: If ``prob`` does not exceed ``p0``; lower quantiles lie
            below the threshold where the excess model says nothing.
    """
    p0 = validate_probability(p0, 'p0')
    prob = validate_probability(prob, 'probability')
    if prob <= p0:
        raise DomainError(
            f"probability {prob} must exceed the threshold level p0={p0}"
        )
    thresholds = np.asarray(thresholds, dtype=float)
    if thresholds.shape != (data.n_individuals,):
        raise ConfigError("one threshold per individual is required")
    excess_prob = (prob - p0) / (1.0 - p0)
    excess = conditional_quantiles(data, coeffs, assignment, spec, excess_prob)
    return thresholds[:, None] + excess
