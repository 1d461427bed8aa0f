from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass
class EmTrace:
    """Iteration history of one EM chain.

    Attributes:
        chain: Index of the chain among the restarts.
        loglik: Log-likelihood after every M-step.
        changes: Number of reassigned individuals after every E-step.
        reseeds: Iterations at which an empty group was re-seeded.
        dropped: 1-based labels of groups dropped after emptying twice.
        unsupported: Individuals outside the support of every group.
        converged: Whether a stopping rule was met before the iteration cap.
        stop_reason: ``'assignment'``, ``'loglik'``, ``'max_iterations'`` or
            ``'failed'``.
        error: Message of the error that ended a failed chain.
    """
    chain: int = 0
    loglik: list[float] = field(default_factory=list)
    changes: list[int] = field(default_factory=list)
    reseeds: list[int] = field(default_factory=list)
    dropped: list[int] = field(default_factory=list)
    unsupported: list[int] = field(default_factory=list)
    converged: bool = False
    stop_reason: str = ''
    error: str = ''

    @property
    def n_iterations(self) -> int:
        return len(self.loglik)

    def is_monotone(self, tolerance: float = 1e-6) -> bool:
        """Whether no recorded log-likelihood drops by more than ``tolerance``."""
        return all(
            after >= before - tolerance
            for before, after in zip(self.loglik, self.loglik[1:])
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, values: dict) -> EmTrace:
        return cls(**values)
