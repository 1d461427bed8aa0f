"""Hard-assignment EM for grouped panel regressions."""
from __future__ import annotations

import logging
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..panel import (
    FitResult,
    GroupAssignment,
    PanelData,
    fit_qml_group,
    group_covariances,
    in_support_counts,
    individual_loglik_matrix,
    panel_sample_size,
    standard_errors,
)
from ..regression import GroupCoefficients, LinkSpec
from ..utils import ConfigError, ExtremePanelError, FitError, spawn_generators
from .assignment import best_groups, canonicalize_labels, random_assignment
from .option import EmOption
from .trace import EmTrace

logger = logging.getLogger(__name__)


class _Chain:
    """State of one EM chain: 0-based labels over the active groups."""
    def __init__(self, data: PanelData, spec: LinkSpec, opts: EmOption,
                 assignment: GroupAssignment,
                 init: list[GroupCoefficients] | None, chain: int):
        self.data = data
        self.spec = spec
        self.opts = opts
        self.labels = assignment.zero_based().copy()
        self.active = list(range(assignment.n_groups))
        self.coeffs = list(init) if init is not None else [None] * assignment.n_groups
        self.reseeded = set()
        self.trace = EmTrace(chain=chain)

    def m_step(self) -> float:
        loglik = 0.0
        for g in self.active:
            members = np.flatnonzero(self.labels == g)
            self.coeffs[g], value = fit_qml_group(
                self.data, members, self.spec, self.coeffs[g], self.opts.optim
            )
            loglik += value
        return loglik

    def e_step(self, iteration: int) -> int:
        active_coeffs = [self.coeffs[g] for g in self.active]
        matrix = individual_loglik_matrix(self.data, active_coeffs, self.spec)
        counts = in_support_counts(self.data, active_coeffs, self.spec)
        best, unsupported = best_groups(matrix, counts)
        for i in unsupported:
            if int(i) not in self.trace.unsupported:
                self.trace.unsupported.append(int(i))
        labels = np.asarray(self.active)[best]
        own = matrix[np.arange(len(labels)), best]

        for g in list(self.active):
            if np.any(labels == g):
                continue
            if g in self.reseeded:
                logger.info('Chain %d: group %d emptied again, dropped',
                            self.trace.chain, g + 1)
                self.active.remove(g)
                self.trace.dropped.append(g + 1)
                continue
            sizes = np.bincount(labels, minlength=len(self.coeffs))
            candidates = np.flatnonzero(sizes[labels] > 1)
            worst = candidates[np.argmin(own[candidates])]
            logger.info('Chain %d: group %d re-seeded with individual %d',
                        self.trace.chain, g + 1, worst)
            self.coeffs[g] = self.coeffs[labels[worst]]
            labels[worst] = g
            self.reseeded.add(g)
            self.trace.reseeds.append(iteration)

        changes = int(np.sum(labels != self.labels))
        self.labels = labels
        return changes

    def run(self) -> float:
        previous = -np.inf
        for iteration in range(1, self.opts.max_em_iterations + 1):
            loglik = self.m_step()
            self.trace.loglik.append(loglik)
            if iteration > 1 and loglik - previous < self.opts.loglik_tolerance:
                self.trace.converged, self.trace.stop_reason = True, 'loglik'
                return loglik
            if iteration == self.opts.max_em_iterations:
                break
            changes = self.e_step(iteration)
            self.trace.changes.append(changes)
            if changes == 0:
                self.trace.converged, self.trace.stop_reason = True, 'assignment'
                return loglik
            previous = loglik
        self.trace.stop_reason = 'max_iterations'
        return loglik

    def realized(self) -> tuple:
        """Return ``(assignment, coefficients)`` over the active groups."""
        position = {g: k for k, g in enumerate(self.active)}
        tau = np.array([position[g] for g in self.labels]) + 1
        return (
            GroupAssignment(tau, len(self.active)),
            [self.coeffs[g] for g in self.active],
        )


def em_iterate(data: PanelData,
               assignment: GroupAssignment,
               spec: LinkSpec,
               opts: EmOption | None = None,
               init: list[GroupCoefficients] | None = None,
               chain: int = 0) -> tuple:
    """Run one EM chain from a given assignment.

    Args:
        init: Warm-start coefficients per group; moment-based if None.

    Returns:
        ``(assignment, coefficients, loglik, trace)`` over the groups that
        are still populated at the end.
    """
    opts = opts or EmOption()
    if len(assignment) != data.n_individuals:
        raise ConfigError(
            f"assignment has {len(assignment)} entries for "
            f"{data.n_individuals} individuals"
        )
    state = _Chain(data, spec, opts, assignment, init, chain)
    try:
        loglik = state.run()
    except ConfigError:
        raise
    except ExtremePanelError as error:
        state.trace.stop_reason, state.trace.error = 'failed', str(error)
        raise FitError(f"chain {chain} failed: {error}", traces=[state.trace]) from error
    final_assignment, coeffs = state.realized()
    return final_assignment, coeffs, loglik, state.trace

def _random_chain(data, n_groups, spec, opts, rng, chain):
    """Run one chain from a random start; a failure is returned, not raised."""
    try:
        start = random_assignment(data.n_individuals, n_groups, rng)
        return em_iterate(data, start, spec, opts, chain=chain)
    except ExtremePanelError as error:
        logger.warning('Chain %d failed: %s', chain, error)
        if isinstance(error, FitError) and error.traces:
            return error.traces[0]
        return EmTrace(chain=chain, stop_reason='failed', error=str(error))

def em_fit(data: PanelData, n_groups: int, spec: LinkSpec,
           opts: EmOption | None = None) -> FitResult:
    """Estimate group memberships and group coefficients jointly.

    Runs ``opts.n_restarts`` chains from random assignments, concurrently
    when more than one thread is available, and keeps the chain with the
    highest log-likelihood (the first one on ties). The reported result has
    canonical labels, sandwich covariances and the trace of that chain.

    Raises:
        ConfigError: If ``n_groups`` is not in ``1..N``.
        FitError: If every chain fails.
    """
    opts = opts or EmOption()
    if not 1 <= n_groups <= data.n_individuals:
        raise ConfigError(
            f"n_groups must lie in 1..{data.n_individuals}, got {n_groups}"
        )
    spec.check_columns(data.n_covariates)
    generators = spawn_generators(opts.seed, opts.n_restarts)
    n_threads = min(opts.get_n_threads(), opts.n_restarts)
    tasks = [
        (data, n_groups, spec, opts, rng, chain)
        for chain, rng in enumerate(generators)
    ]
    # scipy's line search swaps the warning filters inside every worker
    with warnings.catch_warnings():
        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as executor:
                outcomes = list(executor.map(lambda args: _random_chain(*args), tasks))
        else:
            outcomes = [_random_chain(*args) for args in tasks]

    best = None
    for outcome in outcomes:
        if isinstance(outcome, EmTrace):
            continue
        if best is None or outcome[2] > best[2]:
            best = outcome
    if best is None:
        raise FitError(f"all {opts.n_restarts} EM chain(s) failed for G={n_groups}",
                       traces=outcomes)
    assignment, coeffs, loglik, trace = best
    logger.info('G=%d: best chain %d, loglik %.6f after %d iteration(s)',
                n_groups, trace.chain, loglik, trace.n_iterations)

    diagnostics = {
        'chain_logliks': [None if isinstance(o, EmTrace) else o[2] for o in outcomes],
    }
    if assignment.n_groups < n_groups:
        diagnostics['requested_groups'] = n_groups
    placeholder = [None] * assignment.n_groups
    result = canonicalize_labels(FitResult(
        coefficients=coeffs,
        assignment=assignment,
        loglik=loglik,
        covariance=placeholder,
        std_errors=placeholder,
        n_obs=panel_sample_size(data, spec),
        n_iterations=trace.n_iterations,
        converged=trace.converged,
        inverse_hessian=placeholder,
        trace=trace,
        diagnostics=diagnostics,
    ))
    sandwiches, inverse_hessians, singular = group_covariances(
        data, result.assignment, result.coefficients, spec, opts.optim.fd_step
    )
    result.covariance = sandwiches
    result.std_errors = [standard_errors(c) for c in sandwiches]
    result.inverse_hessian = inverse_hessians
    if singular:
        result.diagnostics['singular_groups'] = singular
    return result
