"""The evolution loop of the allocator GA."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.fitness import AllocationPattern
from lte_ga_scheduler.utils import make_rng

from .operators import crossover_pairs, init_population, mutate_population, select_parents

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray

    from lte_ga_scheduler.fitness import FitnessBreakdown, FitnessContext

    from .config import GaConfig

__all__ = ["GaResult", "evolve", "generations_to_threshold", "operation_estimate"]


@dataclass(frozen=True, eq=False)
class GaResult:
    """Outcome of one `evolve()` call."""

    best_pattern: AllocationPattern
    best_fitness: FitnessBreakdown
    generations_used: int
    """Generations evaluated, the initial population counts as the first."""
    fitness_trace: tuple[float, ...]
    """Best combined fitness seen up to and including each generation."""


def _next_generation(
    population: NDArray[np.int64],
    fitnesses: NDArray[np.float64],
    config: GaConfig,
    num_ues: int,
    mutation_rate: float,
    rng: np.random.Generator,
) -> NDArray[np.int64]:
    size = population.shape[0]
    # stable sort keeps the lower index first among equals
    elites = population[np.argsort(-fitnesses, kind="stable")[: config.elite_count]]
    offspring = size - config.elite_count
    pairs = math.ceil(offspring / 2)
    parents = population[select_parents(fitnesses, 2 * pairs, config.tournament_size, rng)]
    child_a, child_b = crossover_pairs(parents[0::2], parents[1::2], config.crossover_rate, rng)
    children = np.concatenate([child_a, child_b])[:offspring]
    children = mutate_population(children, mutation_rate, num_ues, rng)
    return np.concatenate([elites, children])


def evolve(
    config: GaConfig,
    context: FitnessContext,
    initial_seeds: Sequence[AllocationPattern] = (),
) -> GaResult:
    """Search an allocation pattern maximizing the context's combined fitness.

    Each generation keeps the `elite_count` fittest individuals and fills
    the rest through tournament selection, uniform crossover and per gene
    mutation. The loop ends after `max_generations` generations, or after
    `stall_limit` consecutive generations without a strictly better best.

    Args:
        config: GA parameters, `config.seed` drives every random draw.
        context: Scores patterns for the TTI being scheduled.
        initial_seeds: Warm-start patterns, see `init_population()`.

    Returns:
        The best pattern ever evaluated and its fitness trace.
    """
    num_ues, num_rbs = context.num_ues, context.num_rbs
    rng = make_rng(config.seed)
    mutation_rate = config.gene_mutation_rate(num_rbs)
    population = init_population(
        config.population_size,
        num_ues,
        num_rbs,
        rng,
        seed_patterns=initial_seeds,
        seed_mutation_rate=config.seed_mutation_rate,
    )
    fitnesses = context.evaluate_population(population)
    leader = int(np.argmax(fitnesses))
    best_genes, best_value = population[leader].copy(), float(fitnesses[leader])
    trace = [best_value]
    stalled = 0
    while len(trace) < config.max_generations and stalled < config.stall_limit:
        population = _next_generation(population, fitnesses, config, num_ues, mutation_rate, rng)
        fitnesses = context.evaluate_population(population)
        leader = int(np.argmax(fitnesses))
        if fitnesses[leader] > best_value:
            best_genes, best_value = population[leader].copy(), float(fitnesses[leader])
            stalled = 0
        else:
            stalled += 1
        trace.append(best_value)
    best_pattern = AllocationPattern(best_genes)
    return GaResult(
        best_pattern=best_pattern,
        best_fitness=context.evaluate(best_pattern),
        generations_used=len(trace),
        fitness_trace=tuple(trace),
    )


def generations_to_threshold(trace: Sequence[float], threshold: float) -> int:
    """Index of the first generation whose best reaches `threshold`.

    A trace that never gets there counts as its full length.
    """
    reached = np.flatnonzero(np.asarray(trace, dtype=np.float64) >= threshold)
    return int(reached[0]) if reached.size else len(trace)


def operation_estimate(generations: int, population_size: int, num_rbs: int) -> float:
    """Operation count of a GA run: `G * (3 L N + 2 L log2(2 L))`."""
    size = population_size
    return generations * (3 * size * num_rbs + 2 * size * math.log2(2 * size))
