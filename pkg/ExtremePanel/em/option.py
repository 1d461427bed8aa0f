from __future__ import annotations

import os

from ..panel import OptimOption
from ..utils import ConfigError, validate_type

THREADS_ENV = 'EXTREME_PANEL_THREADS'


def _is_not_number(value) -> bool:
    """Return True if ``value`` cannot be read as a number"""
    try:
        float(value)
    except (TypeError, ValueError):
        return True
    return False

def resolve_threads(n_threads: int | None = None) -> int:
    """Return the worker count: ``n_threads``, else the
    ``EXTREME_PANEL_THREADS`` environment variable, else the CPU count.

    Raises:
        ConfigError: If the count is not a positive integer.
    """
    if n_threads is None:
        n_threads = os.environ.get(THREADS_ENV) or os.cpu_count() or 1
    try:
        count = int(n_threads)
    except (TypeError, ValueError):
        count = 0
    if count < 1:
        raise ConfigError(f'Invalid thread count {n_threads!r}')
    return count


class EmOption:
    """Utility class for storing EM options

    Attributes:
        max_em_iterations: Iteration cap of every chain
        n_restarts: Number of independent chains
        seed: Seed of the chain streams
        loglik_tolerance: Minimal log-likelihood gain between iterations
        optim: :class:`OptimOption` of the per-group fits
        n_threads: Concurrent chains; resolved by :func:`resolve_threads` if None
    """
    def __init__(self,
                 max_em_iterations: int = 100,
                 n_restarts: int = 10,
                 seed: int = 0,
                 loglik_tolerance: float = 1e-6,
                 optim: OptimOption | None = None,
                 n_threads: int | None = None):
        self.max_em_iterations = max_em_iterations
        self.n_restarts = n_restarts
        self.seed = seed
        self.loglik_tolerance = loglik_tolerance
        self.optim = OptimOption() if optim is None else optim
        self.n_threads = n_threads
        self.validate()

    def validate(self) -> None:
        """Validate EM options

        Raises:
            ValueError: If any option is invalid
        """
        reason = None
        if _is_not_number(self.max_em_iterations) or int(self.max_em_iterations) < 1:
            reason = 'Invalid max_em_iterations'
        elif _is_not_number(self.n_restarts) or int(self.n_restarts) < 1:
            reason = 'Invalid n_restarts'
        elif _is_not_number(self.seed) or int(self.seed) < 0:
            reason = 'Invalid seed'
        elif _is_not_number(self.loglik_tolerance) or float(self.loglik_tolerance) < 0:
            reason = 'Invalid loglik_tolerance'
        elif self.n_threads is not None and (
            _is_not_number(self.n_threads) or int(self.n_threads) < 1
        ):
            reason = 'Invalid n_threads'
        if reason:
            raise ValueError(reason)
        validate_type(self.optim, OptimOption, 'optim')

        self.max_em_iterations = int(self.max_em_iterations)
        self.n_restarts = int(self.n_restarts)
        self.seed = int(self.seed)
        self.loglik_tolerance = float(self.loglik_tolerance)
        if self.n_threads is not None:
            self.n_threads = int(self.n_threads)

    def get_n_threads(self) -> int:
        return resolve_threads(self.n_threads)

    def to_dict(self) -> dict:
        return {
            'max_iterations': self.max_em_iterations,
            'restarts': self.n_restarts,
            'seed': self.seed,
            'tolerance': self.loglik_tolerance,
            'optim': self.optim.to_dict(),
        }

    @classmethod
    def from_dict(cls, values: dict) -> EmOption:
        """Build options from the ``em`` object of a model configuration."""
        optim = values.get('optim')
        return cls(
            max_em_iterations=values.get('max_iterations', 100),
            n_restarts=values.get('restarts', 10),
            seed=values.get('seed', 0),
            loglik_tolerance=values.get('tolerance', 1e-6),
            optim=None if optim is None else OptimOption.from_dict(optim),
            n_threads=values.get('threads'),
        )
