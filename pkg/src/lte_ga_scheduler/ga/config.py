"""Genetic algorithm configuration."""
from __future__ import annotations

from pydantic import BaseModel, Field, root_validator


class GaConfig(BaseModel):
    """Sizes, operator rates and stopping rules of the allocator GA.

    Surfaces as the `[ga]` section of the scenario config file.
    """

    class Config:
        allow_mutation = False
        extra = "forbid"

    population_size: int = Field(100, ge=2)
    """`L`, individuals per generation."""
    max_generations: int = Field(200, ge=1)
    """`G`, hard cap on generations, the initial population included."""
    crossover_rate: float = Field(0.9, ge=0.0, le=1.0)
    """Probability a selected pair is recombined rather than copied."""
    mutation_rate: float | None = Field(None, ge=0.0, le=1.0)
    """Per gene resample probability, `None` means `1 / N`."""
    tournament_size: int = Field(2, ge=1)
    """Candidates drawn per tournament."""
    elite_count: int = Field(2, ge=0)
    """Best individuals copied unchanged into the next generation."""
    stall_limit: int = Field(30, ge=1)
    """Stop after this many generations without improvement of the best."""
    seed_mutation_rate: float = Field(0.1, ge=0.0, le=1.0)
    """Per gene resample probability for mutated copies of warm-start patterns."""
    seed: int = 0
    """Base seed of the GA stream."""

    @root_validator(skip_on_failure=True)
    def _check_elites(cls, values: dict) -> dict:  # noqa: N805
        if values["elite_count"] >= values["population_size"]:
            raise ValueError("elite_count must be smaller than population_size")
        return values

    def gene_mutation_rate(self, num_rbs: int) -> float:
        """Effective per gene mutation rate for `num_rbs` RBs."""
        return self.mutation_rate if self.mutation_rate is not None else 1.0 / num_rbs
