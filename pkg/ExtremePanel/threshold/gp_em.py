from __future__ import annotations

from ..em import EmOption, em_fit
from ..panel import FitResult, GroupAssignment, OptimOption, fit_grouped_panel
from ..regression import Family, LinkSpec
from ..selection import SweepResult, sweep_group_counts
from ..utils import ConfigError
from .exceedance import ExceedancePanel


def _check_family(spec: LinkSpec) -> None:
    if spec.family is not Family.GP:
        raise ConfigError("a GP link spec is required for exceedance panels")

def em_fit_gp(panel: ExceedancePanel, n_groups: int, spec: LinkSpec,
              opts: EmOption | None = None) -> FitResult:
    """Grouped GP regression of the excesses by EM.

    The BIC sample size of the result is the number of exceedances.

    Raises:
        ConfigError: If ``spec`` is not a GP spec or ``n_groups`` is invalid.
        FitError: If every chain fails.
    """
    _check_family(spec)
    return em_fit(panel.data, n_groups, spec, opts)

def fit_grouped_gp(panel: ExceedancePanel, assignment: GroupAssignment,
                   spec: LinkSpec, opts: OptimOption | None = None) -> FitResult:
    _check_family(spec)
    return fit_grouped_panel(panel.data, assignment, spec, opts)

def select_groups_gp(panel: ExceedancePanel, spec: LinkSpec, g_max: int,
                     opts: EmOption | None = None) -> SweepResult:
    """BIC sweep over ``G = 1..g_max`` for the GP model."""
    _check_family(spec)
    opts = opts or EmOption()
    return sweep_group_counts(
        g_max, panel.data.n_individuals,
        lambda g: em_fit(panel.data, g, spec, opts),
    )
