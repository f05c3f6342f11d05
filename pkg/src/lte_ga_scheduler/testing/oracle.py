"""Exhaustive search over every allocation pattern of tiny instances.

`M ** N` patterns are scored, so keep `M <= 4` and `N <= 6`.
"""
from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import InvalidInputError
from lte_ga_scheduler.fitness import AllocationPattern

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.fitness import FitnessContext

__all__ = ["MAX_PATTERNS", "all_patterns", "best_combined_pattern", "best_throughput_pattern"]

MAX_PATTERNS = 1 << 16


def all_patterns(num_ues: int, num_rbs: int) -> NDArray[np.int64]:
    """Every pattern, lexicographic order, shape `M ** N x N`."""
    if num_ues**num_rbs > MAX_PATTERNS:
        raise InvalidInputError(f"{num_ues} ** {num_rbs} patterns is too many to enumerate")
    return np.array(list(itertools.product(range(num_ues), repeat=num_rbs)), dtype=np.int64)


def best_combined_pattern(context: FitnessContext) -> tuple[AllocationPattern, float]:
    """The combined fitness optimum, the lexicographically first on ties."""
    patterns = all_patterns(context.num_ues, context.num_rbs)
    scores = context.evaluate_population(patterns)
    best = int(np.argmax(scores))
    return AllocationPattern(patterns[best]), float(scores[best])


def best_throughput_pattern(efficiency: ArrayLike) -> tuple[AllocationPattern, float]:
    """The pattern maximizing the sum of `C(z_n, n)`, first on ties."""
    grid = np.asarray(efficiency, dtype=np.float64)
    patterns = all_patterns(*grid.shape)
    totals = grid[patterns, np.arange(grid.shape[1])].sum(axis=1)
    best = int(np.argmax(totals))
    return AllocationPattern(patterns[best]), float(totals[best])
