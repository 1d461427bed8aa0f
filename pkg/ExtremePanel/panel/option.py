from __future__ import annotations


def _is_not_number(value) -> bool:
    """Return True if ``value`` cannot be read as a number"""
    try:
        float(value)
    except (TypeError, ValueError):
        return True
    return False


class OptimOption:
    """Utility class for storing per-group optimizer options

    Attributes:
        max_iterations: Iteration cap of every optimizer stage
        tolerance: Relative tolerance on the log-likelihood change
        polish: Whether to run the quasi-Newton polish after the simplex
        n_simplex_restarts: Number of simplex restarts from the best point
        fd_step: Relative finite-difference step for Hessians and numeric scores
    """
    def __init__(self,
                 max_iterations: int = 2000,
                 tolerance: float = 1e-8,
                 polish: bool = True,
                 n_simplex_restarts: int = 2,
                 fd_step: float = 1e-5):
        self.max_iterations = max_iterations
        self.tolerance = tolerance
        self.polish = polish
        self.n_simplex_restarts = n_simplex_restarts
        self.fd_step = fd_step
        self.validate()

    def validate(self) -> None:
        """Validate optimizer options

        Raises:
            ValueError: If any option is invalid
        """
        reason = None
        if _is_not_number(self.max_iterations) or int(self.max_iterations) < 1:
            reason = 'Invalid max_iterations'
        elif _is_not_number(self.tolerance) or float(self.tolerance) <= 0:
            reason = 'Invalid tolerance'
        elif _is_not_number(self.n_simplex_restarts) or int(self.n_simplex_restarts) < 0:
            reason = 'Invalid n_simplex_restarts'
        elif _is_not_number(self.fd_step) or not 0 < float(self.fd_step) < 1:
            reason = 'Invalid fd_step'
        if reason:
            raise ValueError(reason)

        self.max_iterations = int(self.max_iterations)
        self.tolerance = float(self.tolerance)
        self.polish = bool(self.polish)
        self.n_simplex_restarts = int(self.n_simplex_restarts)
        self.fd_step = float(self.fd_step)

    def to_dict(self) -> dict:
        return {
            'max_iterations': self.max_iterations,
            'tolerance': self.tolerance,
            'polish': self.polish,
            'n_simplex_restarts': self.n_simplex_restarts,
            'fd_step': self.fd_step,
        }

    @classmethod
    def from_dict(cls, values: dict) -> OptimOption:
        return cls(**values)

    def __repr__(self) -> str:
        options = ', '.join(f'{k}={v}' for k, v in self.to_dict().items())
        return f"OptimOption({options})"
