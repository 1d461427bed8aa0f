class ExtremePanelError(Exception):
    """Base class of every error raised by ExtremePanel."""


class DomainError(ExtremePanelError, ValueError):
    """Argument outside the domain of a distribution function."""


class InvalidParameterError(DomainError):
    """Link output is not a valid distribution parameter (e.g. sigma <= 0)."""


class LikelihoodError(DomainError):
    """Quantity requested at an observation outside the model support."""


class ConfigError(ExtremePanelError, ValueError):
    """Inconsistent dimensions, options or configuration files."""


class ParseError(ConfigError):
    """Malformed input file.

    Attributes:
        row: 1-based line number in the file, or None.
    """
    def __init__(self, message: str, row: int | None = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class UnderdeterminedError(ExtremePanelError):
    """Not enough observations to estimate the requested coefficients."""


class FitError(ExtremePanelError):
    """The optimizer or the EM algorithm failed to produce a feasible fit.

    Attributes:
        traces: Iteration histories of the failed EM chains, if any.
    """
    def __init__(self, message: str, traces: list | None = None):
        super().__init__(message)
        self.traces = list(traces or [])


class NumericalRankError(FitError):
    """Singular Hessian.

    Attributes:
        condition: Condition number of the offending matrix.
    """
    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (condition number {condition:.3e})")
        self.condition = condition
