"""Tests for the GA operators."""
from __future__ import annotations

import numpy as np
import pytest

from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError
from lte_ga_scheduler.fitness import AllocationPattern
from lte_ga_scheduler.ga import (
    crossover,
    init_population,
    mutate,
    select_parents,
    tournament_select,
)


def test_init_population_deterministic() -> None:
    """Same seed, same population, all genes in range."""
    first = init_population(10, 4, 6, seed=3)
    np.testing.assert_array_equal(first, init_population(10, 4, 6, seed=3))
    assert first.shape == (10, 6)
    assert first.min() >= 0
    assert first.max() < 4


def test_init_population_seed_first() -> None:
    """A seed pattern is the first individual, verbatim."""
    seed = AllocationPattern(np.array([2, 1, 0, 2]))
    population = init_population(4, 3, 4, seed=0, seed_patterns=[seed])
    np.testing.assert_array_equal(population[0], seed.genes)


def test_init_population_half_seeded_lineage() -> None:
    """`L = 100` with one seed gives 50 lineage members and 50 random ones."""
    seed = AllocationPattern(np.arange(25) % 25)
    population = init_population(100, 25, 25, seed=1, seed_patterns=[seed], seed_mutation_rate=0.0)
    matches = np.all(population == seed.genes, axis=1)
    assert matches[:50].all()
    assert not matches[50:].any()


def test_init_population_many_seeds() -> None:
    """More seeds than half the population all go in verbatim."""
    seeds = [AllocationPattern(np.full(3, ue)) for ue in range(3)]
    population = init_population(4, 3, 3, seed=0, seed_patterns=seeds)
    for index, seed in enumerate(seeds):
        np.testing.assert_array_equal(population[index], seed.genes)


def test_init_population_validation() -> None:
    """`L >= 2`, seeds of length `N`."""
    with pytest.raises(InvalidInputError):
        init_population(1, 2, 2, seed=0)
    with pytest.raises(DimensionError):
        init_population(4, 2, 3, seed=0, seed_patterns=[AllocationPattern(np.array([0, 1]))])


def test_tournament_of_everyone_picks_the_best() -> None:
    """`k = L` always returns the fittest member."""
    rng = np.random.default_rng(0)
    fitnesses = np.array([0.1, 0.7, 0.3, 0.5])
    population = np.zeros((4, 2), dtype=np.int64)
    assert {tournament_select(population, fitnesses, 4, rng) for _ in range(50)} == {1}


def test_tournament_of_one_is_uniform() -> None:
    """`k = 1` can return any member."""
    rng = np.random.default_rng(0)
    winners = select_parents(np.array([5.0, 1.0, 3.0]), 300, 1, rng)
    assert set(winners.tolist()) == {0, 1, 2}


def test_tournament_ties_go_to_lower_index() -> None:
    """Equal fitness, lower index."""
    rng = np.random.default_rng(4)
    assert set(select_parents(np.array([1.0, 1.0]), 20, 2, rng).tolist()) == {0}


def test_tournament_validation() -> None:
    """One fitness per individual, `k >= 1`."""
    rng = np.random.default_rng(0)
    with pytest.raises(DimensionError):
        tournament_select(np.zeros((3, 2)), np.zeros(2), 2, rng)
    with pytest.raises(InvalidInputError):
        select_parents(np.zeros(3), 1, 0, rng)


def test_crossover_rate_zero_copies_parents() -> None:
    """No recombination, children are the parents."""
    rng = np.random.default_rng(0)
    child_a, child_b = crossover([0, 0, 0], [1, 1, 1], 0.0, rng)
    np.testing.assert_array_equal(child_a, [0, 0, 0])
    np.testing.assert_array_equal(child_b, [1, 1, 1])


def test_crossover_identical_parents() -> None:
    """Identical parents give identical children at any rate."""
    rng = np.random.default_rng(0)
    for child in crossover([2, 0, 1], [2, 0, 1], 1.0, rng):
        np.testing.assert_array_equal(child, [2, 0, 1])


def test_crossover_mixes_genes() -> None:
    """Rate 1 on long patterns takes genes from both parents, complementary."""
    rng = np.random.default_rng(7)
    child_a, child_b = crossover(np.zeros(1000), np.ones(1000), 1.0, rng)
    assert 0 < child_a.sum() < 1000
    np.testing.assert_array_equal(child_a + child_b, np.ones(1000))


def test_crossover_length_mismatch() -> None:
    """Parents of different lengths are rejected."""
    with pytest.raises(DimensionError):
        crossover([0, 1], [0, 1, 2], 0.5, np.random.default_rng(0))


def test_mutate_rate_zero_and_single_ue() -> None:
    """Nothing changes at rate 0, or with only one UE to pick."""
    rng = np.random.default_rng(0)
    np.testing.assert_array_equal(mutate([1, 2, 0], 0.0, 3, rng), [1, 2, 0])
    np.testing.assert_array_equal(mutate([0, 0, 0], 1.0, 1, rng), [0, 0, 0])


def test_mutate_rate_one_changes_most_genes() -> None:
    """About `N (1 - 1/M)` genes change when every gene is resampled."""
    rng = np.random.default_rng(11)
    pattern = np.zeros(25, dtype=np.int64)
    assert np.count_nonzero(mutate(pattern, 1.0, 25, rng) != pattern) >= 15


def test_mutate_rate_checked() -> None:
    """Rates outside `[0, 1]` are rejected."""
    with pytest.raises(InvalidInputError):
        mutate([0, 1], 1.5, 2, np.random.default_rng(0))


def test_tournament_members_are_distinct() -> None:
    """Two distinct members out of three never crown the worst one."""
    rng = np.random.default_rng(1)
    winners = select_parents(np.array([0.0, 1.0, 2.0]), 500, 2, rng)
    assert 0 not in winners
    assert set(winners.tolist()) == {1, 2}


def test_tournament_subsets_are_uniform() -> None:
    """With `k = 1` on ten members every index wins about as often."""
    rng = np.random.default_rng(2)
    counts = np.bincount(select_parents(np.zeros(10), 20_000, 1, rng), minlength=10)
    assert counts.min() > 1_700
    assert counts.max() < 2_300
