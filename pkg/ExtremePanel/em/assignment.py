from __future__ import annotations

import warnings
from collections.abc import Sequence

import numpy as np

from ..panel import (
    FitResult,
    GroupAssignment,
    PanelData,
    in_support_counts,
    individual_loglik_matrix,
)
from ..regression import GroupCoefficients, LinkSpec
from ..utils import ConfigError, validate_type


def random_assignment(n_individuals: int, n_groups: int,
                      rng: np.random.Generator) -> GroupAssignment:
    """Draw a random assignment in which every group has a member.

    A random permutation seeds one individual per group; the others are
    assigned uniformly.

    Raises:
        ConfigError: If there are more groups than individuals.
    """
    validate_type(rng, np.random.Generator, 'rng')
    if n_groups > n_individuals:
        raise ConfigError(
            f"cannot split {n_individuals} individual(s) into {n_groups} groups"
        )
    labels = rng.integers(0, n_groups, size=n_individuals)
    seeds = rng.permutation(n_individuals)[:n_groups]
    labels[seeds] = np.arange(n_groups)
    return GroupAssignment.from_zero_based(labels, n_groups)

def best_groups(matrix: np.ndarray, counts: np.ndarray) -> tuple:
    """Row-wise argmax of an N×G log-likelihood matrix.

    Ties go to the lowest column. Rows that are ``-inf`` in every column
    take the column with the most in-support cells instead.

    Returns:
        ``(0-based labels, indices of the unsupported rows)``.
    """
    labels = np.argmax(matrix, axis=1)
    unsupported = np.flatnonzero(np.all(np.isneginf(matrix), axis=1))
    if len(unsupported):
        labels[unsupported] = np.argmax(counts[unsupported], axis=1)
        warnings.warn(
            f"individual(s) {unsupported.tolist()} lie outside the support of "
            "every group; assigned to the group covering most of their cells",
            UserWarning, stacklevel=3,
        )
    return labels, unsupported

def assign_groups(data: PanelData, coeffs: Sequence[GroupCoefficients],
                  spec: LinkSpec) -> GroupAssignment:
    """Assign every individual to the group maximizing its log-likelihood."""
    matrix = individual_loglik_matrix(data, coeffs, spec)
    counts = in_support_counts(data, coeffs, spec)
    labels, _ = best_groups(matrix, counts)
    return GroupAssignment.from_zero_based(labels, len(coeffs))

def canonicalize_labels(result: FitResult) -> FitResult:
    """Relabel groups in increasing order of their first member.

    Coefficients and covariances follow their group; the log-likelihood is
    untouched.
    """
    labels = result.assignment.zero_based()
    order = list(dict.fromkeys(labels.tolist()))
    order += [g for g in range(result.n_groups) if g not in order]
    if order == list(range(result.n_groups)):
        return result
    return result.relabel(order)
