"""Integer-encoded genetic algorithm over allocation patterns."""
from .config import GaConfig
from .engine import GaResult, evolve, generations_to_threshold, operation_estimate
from .operators import (
    crossover,
    crossover_pairs,
    init_population,
    mutate,
    mutate_population,
    select_parents,
    tournament_select,
)

__all__ = [
    "GaConfig",
    "GaResult",
    "crossover",
    "crossover_pairs",
    "evolve",
    "generations_to_threshold",
    "init_population",
    "mutate",
    "mutate_population",
    "operation_estimate",
    "select_parents",
    "tournament_select",
]
