from __future__ import annotations

import copy
import logging
import threading
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np
from tqdm import tqdm

from ..em import EmOption
from ..evaluation import mrae, rand_index
from ..panel import conditional_quantiles
from ..selection import select_groups
from ..utils import ExtremePanelError, derive_seed, spawn_generators, validate_positive_int
from .dgp import TRUE_PROB, DgpConfig, simulate_panel, simulation_link_spec

logger = logging.getLogger(__name__)


class Status(Enum):
    """Utility class for study status"""
    PENDING = 'Pending'
    INIT = 'Initializing'
    INTING = 'Interrupting'
    RUN = 'Running replication {}'


@dataclass
class ReplicationRecord:
    """Outcome of one Monte Carlo replication.

    Attributes:
        index: 0-based replication index.
        g_star: BIC-selected number of groups.
        rand: Rand index of the fit at the true G against the true grouping,
            NaN when that G was not fitted.
        mrae: MRAE of the fitted 0.99 quantiles per fitted G.
        mrae_bic: MRAE of the BIC-selected fit.
        error: Message of the failure that voided the replication.
    """
    index: int
    g_star: int | None = None
    rand: float = float('nan')
    mrae: dict[int, float] = field(default_factory=dict)
    mrae_bic: float = float('nan')
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def from_dict(cls, values: dict) -> ReplicationRecord:
        values = dict(values)
        values['mrae'] = {int(g): float(v) for g, v in values.get('mrae', {}).items()}
        return cls(**values)


@dataclass
class StudySummary:
    """Aggregate of a Monte Carlo study, in replication order."""
    config: dict
    g_max: int
    records: list[ReplicationRecord]

    @property
    def n_reps(self) -> int:
        return len(self.records)

    def _succeeded(self) -> list[ReplicationRecord]:
        return [record for record in self.records if not record.failed]

    @property
    def n_failed(self) -> int:
        return self.n_reps - len(self._succeeded())

    @property
    def true_groups(self) -> int:
        return len(self.config['groups'])

    def selection_fractions(self) -> dict[int, float]:
        """Fraction of successful replications selecting each G."""
        records = self._succeeded()
        if not records:
            return {}
        return {
            g: sum(record.g_star == g for record in records) / len(records)
            for g in range(1, self.g_max + 1)
        }

    @property
    def fraction_true(self) -> float:
        return self.selection_fractions().get(self.true_groups, float('nan'))

    @property
    def mean_rand(self) -> float:
        values = [record.rand for record in self._succeeded()]
        if not values or np.all(np.isnan(values)):
            return float('nan')
        return float(np.nanmean(values))

    def median_mrae(self) -> dict:
        """Median MRAE per G plus the ``'bic'`` entry for the selected fits."""
        records = self._succeeded()
        medians = {}
        for g in range(1, self.g_max + 1):
            values = [r.mrae[g] for r in records if g in r.mrae]
            medians[g] = float(np.median(values)) if values else float('nan')
        values = [r.mrae_bic for r in records]
        medians['bic'] = float(np.median(values)) if values else float('nan')
        return medians

    def to_dict(self) -> dict:
        return {
            'config': self.config,
            'g_max': self.g_max,
            'n_reps': self.n_reps,
            'n_failed': self.n_failed,
            'selection_fractions': {
                str(g): v for g, v in self.selection_fractions().items()
            },
            'fraction_true': self.fraction_true,
            'mean_rand': self.mean_rand,
            'median_mrae': {str(g): v for g, v in self.median_mrae().items()},
            'records': [asdict(record) for record in self.records],
        }

    @classmethod
    def from_dict(cls, values: dict) -> StudySummary:
        return cls(
            config=values['config'],
            g_max=int(values['g_max']),
            records=[ReplicationRecord.from_dict(r) for r in values['records']],
        )


class StudyRunner:
    """Class for running the Monte Carlo selection study

    Attributes:
        config: :class:`DgpConfig` of every replication
        g_max: Largest number of groups in the BIC sweep
        n_reps: Number of replications
        em_option: :class:`EmOption`; its seed is re-derived per replication
        progress: Whether to show a progress bar
        interrupt: bool
            Whether to stop before the next replication
        progress_text: :class:`Status`
            Study progress
        records: Finished :class:`ReplicationRecord` list
        job_thread: :class:`threading.Thread`
            Thread for running in background
    """
    def __init__(self,
                 config: DgpConfig,
                 g_max: int,
                 n_reps: int,
                 em_option: EmOption | None = None,
                 progress: bool = False):
        self.config = config
        self.g_max = validate_positive_int(g_max, 'g_max')
        self.n_reps = validate_positive_int(n_reps, 'n_reps')
        self.em_option = em_option or EmOption()
        self.progress = progress
        self.interrupt = False
        self.progress_text = Status.PENDING
        self.records = []
        self.job_thread = None

    def set_interrupt(self) -> None:
        self.progress_text = Status.INTING
        self.interrupt = True

    def clear_interrupt(self) -> None:
        self.progress_text = Status.PENDING
        self.interrupt = False

    def replication_option(self, index: int) -> EmOption:
        option = copy.copy(self.em_option)
        option.seed = derive_seed(self.em_option.seed, index)
        return option

    def run_replication(self, index: int, rng: np.random.Generator) -> ReplicationRecord:
        """Simulate one panel, sweep G and score the fits against the truth."""
        spec = simulation_link_spec()
        record = ReplicationRecord(index)
        try:
            simulated = simulate_panel(self.config, rng)
            sweep = select_groups(
                simulated.data, spec, self.g_max, self.replication_option(index)
            )
        except ExtremePanelError as error:
            logger.warning('replication %d failed: %s', index, error)
            record.error = str(error)
            return record
        record.g_star = sweep.g_star
        for g, fit in sweep.fits.items():
            estimate = conditional_quantiles(
                simulated.data, fit.coefficients, fit.assignment, spec, TRUE_PROB
            )
            record.mrae[g] = mrae(simulated.true_q99, estimate)
        record.mrae_bic = record.mrae[sweep.g_star]
        if self.config.n_groups in sweep.fits:
            record.rand = rand_index(
                sweep.fits[self.config.n_groups].assignment, simulated.assignment
            )
        return record

    def job(self) -> None:
        """Study job, possibly running in background"""
        self.progress_text = Status.INIT
        self.records = []
        generators = spawn_generators(self.config.seed, self.n_reps)
        for index in tqdm(range(self.n_reps), desc='Replications',
                          disable=not self.progress):
            if self.interrupt:
                break
            self.progress_text = Status.RUN.value.format(index + 1)
            self.records.append(self.run_replication(index, generators[index]))
        self.progress_text = Status.PENDING
        self.job_thread = None

    def run(self, interact: bool = False) -> None:
        """Run study job

        Parameters:
            interact: bool
                Whether to run in background
        """
        if self.is_running():
            return

        self.clear_interrupt()
        if interact:
            self.job_thread = threading.Thread(target=self.job)
            self.job_thread.start()
        else:
            self.job()

    def get_progress_text(self) -> str:
        if isinstance(self.progress_text, Status):
            return self.progress_text.value
        return self.progress_text

    def is_running(self) -> bool:
        return self.job_thread is not None and self.job_thread.is_alive()

    def clean(self, force_update: bool = False) -> None:
        """Stop the study job

        Raises:
            RuntimeError: If the job is still running and
                          :attr:`force_update` is False
        """
        if force_update:
            self.set_interrupt()
        elif self.is_running():
            raise RuntimeError("Study still in progress")

    def get_summary(self) -> StudySummary:
        return StudySummary(self.config.to_dict(), self.g_max, list(self.records))


def run_study(config: DgpConfig, g_max: int, n_reps: int,
              opts: EmOption | None = None, progress: bool = False) -> StudySummary:
    """Run ``n_reps`` replications of simulate, select and score.

    Failed replications are kept in the summary with their error and
    excluded from the aggregates.
    """
    runner = StudyRunner(config, g_max, n_reps, opts, progress)
    runner.run()
    return runner.get_summary()
