"""Population initialization, selection, crossover and mutation.

Operators work on integer gene arrays: a population is an `L x N` array
whose rows are allocation patterns. Batch versions are what the
evolution loop uses; the single-individual functions are thin wrappers
over them.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError
from lte_ga_scheduler.utils import make_rng

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.fitness import AllocationPattern
    from lte_ga_scheduler.utils import SeedLike

__all__ = [
    "crossover",
    "crossover_pairs",
    "init_population",
    "mutate",
    "mutate_population",
    "select_parents",
    "tournament_select",
]


def init_population(
    size: int,
    num_ues: int,
    num_rbs: int,
    seed: SeedLike,
    seed_patterns: Sequence[AllocationPattern] = (),
    seed_mutation_rate: float = 0.1,
) -> NDArray[np.int64]:
    """Initial population, optionally warm-started.

    Without seed patterns every individual is uniform random. Otherwise
    the population starts with each seed pattern verbatim, followed by
    mutated copies of them (cycling through the seeds) up to
    `ceil(size / 2)` members, and uniform random individuals after that.

    Args:
        size: `L`.
        num_ues: `M`.
        num_rbs: `N`.
        seed: Seed or generator.
        seed_patterns: Warm-start patterns, valid for `(M, N)`.
        seed_mutation_rate: Per gene resample probability of the mutated copies.

    Raises:
        DimensionError: If a seed pattern doesn't have `N` genes.
    """
    if size < 2:
        raise InvalidInputError(f"population size must be >= 2, got {size}")
    rng = make_rng(seed)
    population = rng.integers(0, num_ues, size=(size, num_rbs))
    if not seed_patterns:
        return population
    for pattern in seed_patterns:
        pattern.validate(num_ues, num_rbs)
    lineage = min(size, max(math.ceil(size / 2), len(seed_patterns)))
    for index in range(lineage):
        genes = seed_patterns[index % len(seed_patterns)].genes
        if index < len(seed_patterns):
            population[index] = genes
        else:
            population[index] = mutate_population(genes, seed_mutation_rate, num_ues, rng)
    return population


def select_parents(
    fitnesses: ArrayLike, count: int, tournament_size: int, rng: np.random.Generator
) -> NDArray[np.int64]:
    """Run `count` independent tournaments.

    Each tournament draws `tournament_size` distinct members uniformly
    (the whole population when it is larger) and returns the fittest,
    ties going to the lower index.

    Returns:
        Winner indices, shape `(count,)`.
    """
    if tournament_size < 1:
        raise InvalidInputError(f"tournament size must be >= 1, got {tournament_size}")
    scores = np.asarray(fitnesses, dtype=np.float64)
    population = scores.size
    size = min(tournament_size, population)
    # Floyd's subset sampling, one column per member: O(count * k^2), not O(count * L)
    candidates = np.empty((count, size), dtype=np.int64)
    for column, upper in enumerate(range(population - size, population)):
        draw = rng.integers(0, upper + 1, size=count)
        taken = (candidates[:, :column] == draw[:, np.newaxis]).any(axis=1)
        candidates[:, column] = np.where(taken, upper, draw)
    candidates.sort(axis=1)
    # argmax returns the first maximum, candidates are sorted so that is the lowest index
    winners = np.argmax(scores[candidates], axis=1)
    return candidates[np.arange(count), winners]


def tournament_select(
    population: ArrayLike, fitnesses: ArrayLike, k: int, rng: np.random.Generator
) -> int:
    """Index of the best of `k` uniformly drawn members of `population`."""
    if np.shape(population)[0] != np.size(fitnesses):
        raise DimensionError("one fitness value per individual is required")
    return int(select_parents(fitnesses, 1, k, rng)[0])


def crossover_pairs(
    parents_a: NDArray[np.int64],
    parents_b: NDArray[np.int64],
    rate: float,
    rng: np.random.Generator,
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Uniform crossover over aligned rows of two parent arrays.

    Each pair is recombined with probability `rate`: every gene comes
    from either parent on a fair coin, the second child taking the
    complement. Pairs that are not recombined are copied.
    """
    if parents_a.shape != parents_b.shape:
        raise DimensionError(f"parent shapes differ: {parents_a.shape} != {parents_b.shape}")
    recombine = rng.random(parents_a.shape[0]) < rate
    coins = rng.random(parents_a.shape) < 0.5
    take_a = coins | ~recombine[:, np.newaxis]
    return np.where(take_a, parents_a, parents_b), np.where(take_a, parents_b, parents_a)


def crossover(
    parent_a: ArrayLike, parent_b: ArrayLike, rate: float, rng: np.random.Generator
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Uniform crossover of two patterns, see `crossover_pairs()`."""
    genes_a = np.asarray(parent_a, dtype=np.int64)
    genes_b = np.asarray(parent_b, dtype=np.int64)
    if genes_a.shape != genes_b.shape:
        raise DimensionError(f"parent lengths differ: {genes_a.size} != {genes_b.size}")
    child_a, child_b = crossover_pairs(genes_a[np.newaxis, :], genes_b[np.newaxis, :], rate, rng)
    return child_a[0], child_b[0]


def mutate_population(
    genes: NDArray[np.int64], rate: float, num_ues: int, rng: np.random.Generator
) -> NDArray[np.int64]:
    """Resample each gene uniformly over `[0, num_ues)` with probability `rate`."""
    if not 0.0 <= rate <= 1.0:
        raise InvalidInputError(f"mutation rate must be in [0, 1], got {rate}")
    hits = rng.random(genes.shape) < rate
    return np.where(hits, rng.integers(0, num_ues, size=genes.shape), genes)


def mutate(
    pattern: ArrayLike, rate: float, num_ues: int, rng: np.random.Generator
) -> NDArray[np.int64]:
    """Mutate a single pattern, see `mutate_population()`."""
    return mutate_population(np.asarray(pattern, dtype=np.int64), rate, num_ues, rng)
