from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..regression import GroupCoefficients
from .data import GroupAssignment


def standard_errors(covariance: np.ndarray) -> np.ndarray:
    """Square roots of the diagonal, negative rounding noise clipped to 0."""
    return np.sqrt(np.clip(np.diag(covariance), 0.0, None))


@dataclass
class FitResult:
    """Outcome of a grouped panel fit.

    Attributes:
        coefficients: Coefficients of each realized group, in label order.
        assignment: Group label of every individual.
        loglik: Panel log-likelihood at the estimate.
        covariance: Sandwich covariance per group (P×P); NaN when the
            Hessian of the group was singular.
        std_errors: Square roots of the covariance diagonals.
        n_obs: Sample size entering the BIC.
        n_iterations: EM iterations of the reported chain (0 for a direct fit).
        converged: Whether the reported chain met a stopping rule.
        inverse_hessian: Inverse-Hessian covariance per group, for diagnostics.
        trace: :class:`~ExtremePanel.em.EmTrace` of the reported chain.
        diagnostics: Free-form flags (singular groups, dropped groups, ...).
    """
    coefficients: list[GroupCoefficients]
    assignment: GroupAssignment
    loglik: float
    covariance: list[np.ndarray]
    std_errors: list[np.ndarray]
    n_obs: int
    n_iterations: int = 0
    converged: bool = True
    inverse_hessian: list[np.ndarray] | None = None
    trace: object | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_groups(self) -> int:
        return self.assignment.n_groups

    @property
    def n_parameters(self) -> int:
        """Coefficients per group, P."""
        return len(self.coefficients[0].flatten())

    def relabel(self, order: list[int]) -> FitResult:
        """Return the result with new group ``g`` taken from old group ``order[g]``.

        Both labels are 0-based.
        """
        inverse = np.empty(len(order), dtype=int)
        inverse[np.asarray(order)] = np.arange(len(order))
        tau = inverse[self.assignment.zero_based()] + 1
        inverse_hessian = self.inverse_hessian
        if inverse_hessian is not None:
            inverse_hessian = [inverse_hessian[g] for g in order]
        return replace(
            self,
            coefficients=[self.coefficients[g] for g in order],
            assignment=GroupAssignment(tau, self.n_groups),
            covariance=[self.covariance[g] for g in order],
            std_errors=[self.std_errors[g] for g in order],
            inverse_hessian=inverse_hessian,
        )

    def to_dict(self) -> dict:
        def matrices(values):
            return None if values is None else [np.asarray(m).tolist() for m in values]

        return {
            'coefficients': [c.to_dict() for c in self.coefficients],
            'assignment': self.assignment.to_list(),
            'n_groups': self.n_groups,
            'loglik': float(self.loglik),
            'covariance': matrices(self.covariance),
            'std_errors': matrices(self.std_errors),
            'inverse_hessian': matrices(self.inverse_hessian),
            'n_obs': int(self.n_obs),
            'n_iterations': int(self.n_iterations),
            'converged': bool(self.converged),
            'trace': None if self.trace is None else self.trace.to_dict(),
            'diagnostics': self.diagnostics,
        }

    @classmethod
    def from_dict(cls, values: dict) -> FitResult:
        from ..em.trace import EmTrace

        def matrices(items):
            return None if items is None else [np.asarray(m, dtype=float) for m in items]

        trace = values.get('trace')
        return cls(
            coefficients=[GroupCoefficients.from_dict(c) for c in values['coefficients']],
            assignment=GroupAssignment(values['assignment'], values['n_groups']),
            loglik=float(values['loglik']),
            covariance=matrices(values['covariance']),
            std_errors=matrices(values['std_errors']),
            n_obs=int(values['n_obs']),
            n_iterations=int(values.get('n_iterations', 0)),
            converged=bool(values.get('converged', True)),
            inverse_hessian=matrices(values.get('inverse_hessian')),
            trace=None if trace is None else EmTrace.from_dict(trace),
            diagnostics=dict(values.get('diagnostics', {})),
        )
