"""Scheduler objectives.

`f1` is the sum rate over the efficiency grid, `f2` the total GBR
shortfall computed with one MCS per UE (the one its worst assigned RB
supports), and the scheduler maximizes `w1 * f1_norm - w2 * f2_norm`.

Evaluation is vectorized over whole GA populations, see
`FitnessContext.evaluate_population()`.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import (
    DegenerateScenarioError,
    DimensionError,
    InvalidInputError,
)
from lte_ga_scheduler.lte.channel import build_efficiency_matrix

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.lte import CqiMatrix, DemandVector, McsTable

__all__ = [
    "AllocationPattern",
    "FitnessBreakdown",
    "FitnessContext",
    "SchedulerWeights",
    "combined_fitness",
    "fitness_f1",
    "fitness_f2",
    "normalizers",
    "population_user_rates",
    "user_rate",
]

_WEIGHT_SUM_TOL = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class SchedulerWeights:
    """Objective weights `(w1, w2)`, `w1 + w2 = 1`."""

    w1: float
    w2: float

    def __post_init__(self) -> None:
        for name in ("w1", "w2"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise InvalidInputError(f"{name} must be in [0, 1], got {value}")
        if abs(self.w1 + self.w2 - 1.0) > _WEIGHT_SUM_TOL:
            raise InvalidInputError(f"weights must sum to 1, got {self.w1} + {self.w2}")

    @classmethod
    def from_w1(cls, w1: float) -> SchedulerWeights:
        """Weights `(w1, 1 - w1)`."""
        return cls(w1=float(w1), w2=1.0 - float(w1))

    @classmethod
    def from_w2(cls, w2: Fraction) -> SchedulerWeights:
        """Weights from an exact `w2`, `w1` is derived in rational arithmetic."""
        return cls(w1=float(1 - w2), w2=float(w2))


@dataclass(frozen=True, eq=False)
class AllocationPattern:
    """`Z = [z_1 .. z_N]`, the UE index scheduled on each RB."""

    genes: NDArray[np.int64]

    def __post_init__(self) -> None:
        genes = np.array(self.genes, dtype=np.int64)
        if genes.ndim != 1 or genes.size < 1:
            raise DimensionError(f"allocation pattern must be a non-empty vector, got {genes.shape}")
        genes.setflags(write=False)
        object.__setattr__(self, "genes", genes)

    @property
    def num_rbs(self) -> int:
        """`N`."""
        return int(self.genes.size)

    def validate(self, num_ues: int, num_rbs: int | None = None) -> AllocationPattern:
        """Check the pattern against scenario dimensions.

        Returns:
            The pattern itself.

        Raises:
            DimensionError: On a length other than `num_rbs`.
            InvalidInputError: On a UE index outside `[0, num_ues)`.
        """
        if num_rbs is not None and self.num_rbs != num_rbs:
            raise DimensionError(f"pattern has {self.num_rbs} RBs, scenario has {num_rbs}")
        if self.genes.min() < 0 or self.genes.max() >= num_ues:
            raise InvalidInputError(f"UE indices must be in [0, {num_ues})")
        return self

    def assignment(self, num_ues: int) -> NDArray[np.bool_]:
        """Binary assignment `a(m, n)`, shape `M x N`."""
        return self.genes[np.newaxis, :] == np.arange(num_ues)[:, np.newaxis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AllocationPattern):
            return NotImplemented
        return np.array_equal(self.genes, other.genes)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"AllocationPattern({self.genes.tolist()})"


@dataclass(frozen=True, eq=False)
class FitnessBreakdown:
    """Both objective terms of one pattern, raw and normalized."""

    f1_raw: float
    """Sum rate, bits/TTI."""
    f1_norm: float
    f2_raw: float
    """Total GBR shortfall, bits/TTI."""
    f2_norm: float
    combined: float
    """`w1 * f1_norm - w2 * f2_norm`."""
    per_ue_rate: NDArray[np.float64] = field(repr=False)
    """Bits/TTI each UE gets under the one-MCS-per-UE rule."""


def population_user_rates(
    genes: ArrayLike, cqi: CqiMatrix, table: McsTable
) -> NDArray[np.float64]:
    """Rate of every UE under every pattern in `genes`.

    Args:
        genes: Patterns, shape `L x N` (or `N` for a single pattern).
        cqi: Channel, `M x N`.
        table: MCS table.

    Returns:
        Bits/TTI, shape `L x M` (or `M`). A UE's rate is the number of RBs
        it holds times the rate of the MCS supported by its lowest CQI
        among them.
    """
    population = np.asarray(genes, dtype=np.int64)
    single = population.ndim == 1
    population = np.atleast_2d(population)
    size, num_rbs = population.shape
    num_ues = cqi.num_ues
    if num_rbs != cqi.num_rbs:
        raise DimensionError(f"patterns have {num_rbs} RBs, channel has {cqi.num_rbs}")
    table.check_cqi(cqi.values)
    flat = (np.arange(size)[:, np.newaxis] * num_ues + population).ravel()
    counts = np.bincount(flat, minlength=size * num_ues)
    # the table's Q + 1 marks "no RB", its lookup rate is zero
    min_cqi = np.full(size * num_ues, table.cqi_levels + 1, dtype=np.int64)
    np.minimum.at(min_cqi, flat, cqi.values[population, np.arange(num_rbs)].ravel())
    rates = (counts * table.rate_by_cqi[min_cqi]).reshape(size, num_ues)
    return rates[0] if single else rates


def user_rate(pattern: AllocationPattern, ue: int, cqi: CqiMatrix, table: McsTable) -> float:
    """Bits/TTI UE `ue` gets from `pattern`.

    All RBs of a UE share one MCS, the highest one its worst assigned RB
    supports: `|S| * r(cqi_to_mcs(min_{n in S} j(ue, n)))`, zero if the UE
    holds no RB.
    """
    if not 0 <= ue < cqi.num_ues:
        raise InvalidInputError(f"UE index must be in [0, {cqi.num_ues})")
    held = np.flatnonzero(pattern.genes == ue)
    if held.size == 0:
        return 0.0
    worst = cqi.values[ue, held].min()
    return float(held.size * table.rate_for_cqi(worst))


def fitness_f1(pattern: AllocationPattern, efficiency: NDArray[np.float64]) -> float:
    """Sum rate `sum_n C(z_n, n)`, bits/TTI."""
    grid = np.asarray(efficiency)
    if grid.shape[1] != pattern.num_rbs:
        raise DimensionError(f"pattern has {pattern.num_rbs} RBs, grid has {grid.shape[1]}")
    return float(grid[pattern.genes, np.arange(pattern.num_rbs)].sum())


def fitness_f2(
    pattern: AllocationPattern, demands: DemandVector, cqi: CqiMatrix, table: McsTable
) -> float:
    """Total GBR shortfall `sum_gbr max(0, R_q(m) * TTI - rate(m))`, bits/TTI."""
    if demands.num_ues != cqi.num_ues:
        raise DimensionError(f"{demands.num_ues} demands for {cqi.num_ues} UEs")
    rates = population_user_rates(pattern.genes, cqi, table)
    shortfall = np.maximum(0.0, demands.bits_per_tti - rates)
    return float(shortfall[demands.gbr_mask].sum())


def normalizers(
    efficiency: NDArray[np.float64], demands: DemandVector, cqi: CqiMatrix, table: McsTable
) -> tuple[float, float]:
    """Upper bounds used to bring `f1` and `f2` into `[0, 1]`.

    Returns:
        `f1_ub = sum_n max_m C(m, n)` and `f2_ub` = total GBR demand per TTI.

    Raises:
        DegenerateScenarioError: When `C` is all zero and no UE is GBR.
    """
    grid = np.asarray(efficiency)
    if grid.shape != cqi.values.shape or demands.num_ues != cqi.num_ues:
        raise DimensionError("efficiency grid, channel and demands disagree on M x N")
    table.check_cqi(cqi.values)
    f1_ub = float(grid.max(axis=0).sum())
    f2_ub = float(demands.bits_per_tti[demands.gbr_mask].sum())
    if f1_ub <= 0 and demands.num_gbr == 0:
        raise DegenerateScenarioError("efficiency grid is all zero and no UE is GBR")
    return f1_ub, f2_ub


@dataclass(frozen=True, eq=False)
class FitnessContext:
    """Everything needed to score patterns for one TTI.

    Build with `FitnessContext.build()`, which computes the efficiency
    grid and the normalizers once.
    """

    cqi: CqiMatrix
    table: McsTable
    demands: DemandVector
    weights: SchedulerWeights
    efficiency: NDArray[np.float64] = field(repr=False)
    f1_ub: float
    f2_ub: float

    @classmethod
    def build(
        cls,
        cqi: CqiMatrix,
        table: McsTable,
        demands: DemandVector,
        weights: SchedulerWeights,
    ) -> FitnessContext:
        """Compute `C` and the normalizers for the TTI."""
        efficiency = build_efficiency_matrix(cqi, table)
        efficiency.setflags(write=False)
        f1_ub, f2_ub = normalizers(efficiency, demands, cqi, table)
        return cls(
            cqi=cqi,
            table=table,
            demands=demands,
            weights=weights,
            efficiency=efficiency,
            f1_ub=f1_ub,
            f2_ub=f2_ub,
        )

    @property
    def num_ues(self) -> int:
        """`M`."""
        return self.cqi.num_ues

    @property
    def num_rbs(self) -> int:
        """`N`."""
        return self.cqi.num_rbs

    def with_weights(self, weights: SchedulerWeights) -> FitnessContext:
        """Same TTI, different weights."""
        return replace(self, weights=weights)

    def _terms(
        self, genes: NDArray[np.int64]
    ) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
        f1 = self.efficiency[genes, np.arange(self.num_rbs)].sum(axis=1)
        rates = population_user_rates(genes, self.cqi, self.table)
        shortfall = np.maximum(0.0, self.demands.bits_per_tti - rates)
        f2 = (shortfall * self.demands.gbr_mask).sum(axis=1)
        return f1, f2, rates

    def _normalize(
        self, f1: NDArray[np.float64], f2: NDArray[np.float64]
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        f1_norm = f1 / self.f1_ub if self.f1_ub > 0 else np.zeros_like(f1)
        f2_norm = f2 / self.f2_ub if self.f2_ub > 0 else np.zeros_like(f2)
        return f1_norm, f2_norm

    def evaluate_population(self, genes: ArrayLike) -> NDArray[np.float64]:
        """Combined fitness of every pattern in `genes`, shape `L x N`."""
        population = np.atleast_2d(np.asarray(genes, dtype=np.int64))
        if population.shape[1] != self.num_rbs:
            raise DimensionError(f"patterns have {population.shape[1]} RBs, need {self.num_rbs}")
        f1, f2, _ = self._terms(population)
        f1_norm, f2_norm = self._normalize(f1, f2)
        return self.weights.w1 * f1_norm - self.weights.w2 * f2_norm

    def evaluate(self, pattern: AllocationPattern) -> FitnessBreakdown:
        """Full breakdown of one pattern."""
        pattern.validate(self.num_ues, self.num_rbs)
        f1, f2, rates = self._terms(pattern.genes[np.newaxis, :])
        f1_norm, f2_norm = self._normalize(f1, f2)
        per_ue_rate = rates[0]
        per_ue_rate.setflags(write=False)
        combined = self.weights.w1 * f1_norm[0] - self.weights.w2 * f2_norm[0]
        return FitnessBreakdown(
            f1_raw=float(f1[0]),
            f1_norm=float(f1_norm[0]),
            f2_raw=float(f2[0]),
            f2_norm=float(f2_norm[0]),
            combined=float(combined),
            per_ue_rate=per_ue_rate,
        )


def combined_fitness(
    pattern: AllocationPattern, weights: SchedulerWeights, context: FitnessContext
) -> FitnessBreakdown:
    """Score `pattern` for the context's TTI under `weights`."""
    if weights != context.weights:
        context = context.with_weights(weights)
    return context.evaluate(pattern)

