from .copula import CopulaKind, CopulaSpec, positive_stable, sample_copula
from .dgp import (
    REFERENCE_GROUPS,
    CovariateParams,
    DgpConfig,
    GroupParams,
    SimulatedPanel,
    simulate_covariates,
    simulate_panel,
    simulation_link_spec,
)
from .runner import ReplicationRecord, Status, StudyRunner, StudySummary, run_study

__all__ = [
    'CopulaKind', 'CopulaSpec', 'sample_copula', 'positive_stable',
    'GroupParams', 'CovariateParams', 'DgpConfig', 'REFERENCE_GROUPS',
    'SimulatedPanel', 'simulate_covariates', 'simulate_panel',
    'simulation_link_spec',
    'Status', 'ReplicationRecord', 'StudySummary', 'StudyRunner', 'run_study',
]
