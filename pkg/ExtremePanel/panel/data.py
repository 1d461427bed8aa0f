from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ..utils import ConfigError, validate_type


def _read_only(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


class PanelData:
    """Class for storing a panel of responses and covariates.

    Missing cells are encoded as NaN in ``y``. Covariates of missing cells
    are carried as given (they may be NaN) and never enter a likelihood.

    Parameters:
        y: Response matrix of shape (N, T).
        x: Covariate array of shape (N, T, K); ``None`` means K = 0.
        column_names: Names of the K covariate columns.
        individual_ids: Labels of the N individuals, defaults to ``0..N-1``.
        time_index: Labels of the T periods, defaults to ``0..T-1``.

    Attributes:
        y: np.ndarray
            Read-only N×T responses, NaN where missing.
        x: np.ndarray
            Read-only N×T×K covariates.
        mask: np.ndarray
            Read-only N×T boolean array, True where ``y`` is observed.
        column_names: list[str]
        individual_ids: list
        time_index: list

    Raises:
        ConfigError: If shapes disagree, an observed response is infinite
            or an observed cell has a non-finite covariate.
    """
    def __init__(self,
                 y: np.ndarray,
                 x: np.ndarray | None = None,
                 column_names: Sequence[str] | None = None,
                 individual_ids: Sequence | None = None,
                 time_index: Sequence | None = None):
        y = np.array(y, dtype=float)
        if y.ndim != 2 or y.shape[0] < 1 or y.shape[1] < 1:
            raise ConfigError(f"y must be a non-empty N×T matrix, got shape {y.shape}")
        n_individuals, n_periods = y.shape
        if x is None:
            x = np.zeros((n_individuals, n_periods, 0))
        x = np.array(x, dtype=float)
        if x.ndim != 3 or x.shape[:2] != y.shape:
            raise ConfigError(
                f"x must have shape {y.shape + ('K',)}, got {x.shape}"
            )
        if np.any(np.isinf(y)):
            raise ConfigError("observed responses must be finite")
        mask = ~np.isnan(y)
        if not np.all(np.isfinite(x[mask])):
            raise ConfigError("covariates of observed cells must be finite")

        if column_names is None:
            column_names = [f'x{k + 1}' for k in range(x.shape[2])]
        column_names = [str(name) for name in column_names]
        if len(column_names) != x.shape[2]:
            raise ConfigError(
                f"{len(column_names)} column name(s) for {x.shape[2]} covariate(s)"
            )
        individual_ids = list(range(n_individuals)) if individual_ids is None \
            else list(individual_ids)
        time_index = list(range(n_periods)) if time_index is None \
            else list(time_index)
        if len(individual_ids) != n_individuals or len(time_index) != n_periods:
            raise ConfigError("index labels do not match the panel shape")

        self.y = _read_only(y)
        self.x = _read_only(x)
        mask.setflags(write=False)
        self.mask = mask
        self.column_names = column_names
        self.individual_ids = individual_ids
        self.time_index = time_index

    @property
    def n_individuals(self) -> int:
        return self.y.shape[0]

    @property
    def n_periods(self) -> int:
        return self.y.shape[1]

    @property
    def n_covariates(self) -> int:
        return self.x.shape[2]

    @property
    def n_observed(self) -> int:
        """Number of non-missing cells."""
        return int(self.mask.sum())

    def get_column_names(self) -> list[str]:
        return list(self.column_names)

    def get_individual_ids(self) -> list:
        return list(self.individual_ids)

    def get_time_index(self) -> list:
        return list(self.time_index)

    def observed_inputs(self, individuals: Sequence[int] | None = None) -> tuple:
        """Return ``(y, x, mask)`` for the selected rows with missing cells
        filled by zeros, ready for vectorized likelihood evaluation."""
        rows = slice(None) if individuals is None else np.asarray(individuals, dtype=int)
        mask = self.mask[rows]
        y = np.where(mask, self.y[rows], 0.0)
        x = np.where(mask[..., None], self.x[rows], 0.0)
        return y, x, mask

    def subset(self, individuals: Sequence[int]) -> PanelData:
        """Return the panel restricted to the given 0-based individuals."""
        rows = np.asarray(individuals, dtype=int)
        if rows.ndim != 1 or len(rows) == 0:
            raise ConfigError("subset needs at least one individual")
        if np.any((rows < 0) | (rows >= self.n_individuals)):
            raise ConfigError("individual index out of range")
        return PanelData(
            self.y[rows], self.x[rows], self.column_names,
            [self.individual_ids[i] for i in rows], self.time_index
        )

    def with_missing(self,
                     individuals: Sequence[int],
                     fraction: float,
                     rng: np.random.Generator) -> PanelData:
        """Delete a random ``fraction`` of the observed cells of ``individuals``.

        The number of deleted cells per individual is
        ``round(fraction * n_observed_i)``.
        """
        validate_type(rng, np.random.Generator, 'rng')
        if not 0.0 <= fraction <= 1.0:
            raise ConfigError(f"fraction must lie in [0, 1], got {fraction}")
        y = np.array(self.y)
        for i in individuals:
            observed = np.flatnonzero(self.mask[i])
            n_delete = int(round(fraction * len(observed)))
            if n_delete:
                y[i, rng.choice(observed, size=n_delete, replace=False)] = np.nan
        return PanelData(
            y, self.x, self.column_names, self.individual_ids, self.time_index
        )

    def __repr__(self) -> str:
        return (
            f"PanelData(N={self.n_individuals}, T={self.n_periods}, "
            f"K={self.n_covariates}, observed={self.n_observed})"
        )


class GroupAssignment:
    """Class for storing a partition of the individuals into groups.

    Parameters:
        tau: Group label of every individual, 1-based.
        n_groups: Number of groups G; defaults to ``max(tau)``.

    Raises:
        ConfigError: If a label lies outside ``1..G``.
    """
    def __init__(self, tau: Sequence[int], n_groups: int | None = None):
        tau = np.array(tau, dtype=int).reshape(-1)
        if len(tau) == 0:
            raise ConfigError("an assignment needs at least one individual")
        if n_groups is None:
            n_groups = int(tau.max())
        if n_groups < 1:
            raise ConfigError(f"n_groups must be at least 1, got {n_groups}")
        if np.any((tau < 1) | (tau > n_groups)):
            raise ConfigError(f"group labels must lie in 1..{n_groups}")
        tau.setflags(write=False)
        self.tau = tau
        self.n_groups = int(n_groups)

    @classmethod
    def from_zero_based(cls, labels: Sequence[int],
                        n_groups: int | None = None) -> GroupAssignment:
        labels = np.asarray(labels, dtype=int)
        return cls(labels + 1, n_groups)

    @classmethod
    def single(cls, n_individuals: int) -> GroupAssignment:
        return cls(np.ones(n_individuals, dtype=int), 1)

    def __len__(self) -> int:
        return len(self.tau)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAssignment):
            return NotImplemented
        return self.n_groups == other.n_groups and np.array_equal(self.tau, other.tau)

    def __hash__(self) -> int:
        return hash((self.n_groups, self.tau.tobytes()))

    def __repr__(self) -> str:
        return f"GroupAssignment({self.tau.tolist()}, n_groups={self.n_groups})"

    def members(self, group: int) -> np.ndarray:
        """Return the 0-based indices of the individuals of a 1-based group."""
        return np.flatnonzero(self.tau == group)

    def group_sizes(self) -> np.ndarray:
        return np.bincount(self.tau - 1, minlength=self.n_groups)

    def zero_based(self) -> np.ndarray:
        return self.tau - 1

    def to_list(self) -> list[int]:
        return self.tau.tolist()
