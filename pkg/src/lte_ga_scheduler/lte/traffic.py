"""UE population and synthetic traffic demand."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.constants import NON_GBR_DEMAND, TTI_DURATION_S
from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError
from lte_ga_scheduler.utils import make_rng

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.utils import SeedLike

__all__ = [
    "DEFAULT_PERTURBATION",
    "DemandVector",
    "UePopulation",
    "generate_demands",
]

DEFAULT_PERTURBATION = (0.9, 1.1)
"""Range of the multiplicative factor applied to GBR demands each TTI."""


def _frozen(values: ArrayLike, dtype: type) -> NDArray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class UePopulation:
    """The UEs attached to the cell.

    `gbr_demands` holds `R_q(m)` in bits/s for GBR UEs and the best
    effort sentinel for the others.
    """

    gbr_mask: NDArray[np.bool_]
    gbr_demands: NDArray[np.float64]
    speeds: NDArray[np.float64]

    def __post_init__(self) -> None:
        mask = _frozen(self.gbr_mask, bool)
        demands = _frozen(self.gbr_demands, np.float64)
        speeds = _frozen(np.broadcast_to(np.asarray(self.speeds, np.float64), mask.shape), np.float64)
        if mask.ndim != 1 or mask.size < 1:
            raise DimensionError("population needs at least one UE")
        if demands.shape != mask.shape:
            raise DimensionError("one demand per UE is required")
        if np.any(demands[mask] <= 0):
            raise InvalidInputError("every GBR demand must be > 0")
        if np.any(speeds < 0):
            raise InvalidInputError("UE speeds must be >= 0 km/h")
        demands = demands.copy()
        demands[~mask] = NON_GBR_DEMAND
        demands.setflags(write=False)
        object.__setattr__(self, "gbr_mask", mask)
        object.__setattr__(self, "gbr_demands", demands)
        object.__setattr__(self, "speeds", speeds)

    @property
    def num_ues(self) -> int:
        """`M`."""
        return int(self.gbr_mask.size)

    @property
    def num_gbr(self) -> int:
        """Number of GBR UEs."""
        return int(self.gbr_mask.sum())

    @classmethod
    def build(
        cls,
        num_ues: int,
        gbr_fraction: float,
        demand_levels: Sequence[float],
        speed: float | Sequence[float],
    ) -> UePopulation:
        """Population with the first `round(gbr_fraction * num_ues)` UEs GBR.

        GBR UEs take their demand from `demand_levels` in turn.

        Args:
            num_ues: `M`.
            gbr_fraction: Share of GBR UEs, in `[0, 1]`.
            demand_levels: GBR demands in bits/s, cycled over the GBR UEs.
            speed: Speed of every UE, or one per UE, km/h.
        """
        if not 0 <= gbr_fraction <= 1:
            raise InvalidInputError(f"GBR fraction must be in [0, 1], got {gbr_fraction}")
        if num_ues < 1:
            raise DimensionError("population needs at least one UE")
        num_gbr = int(np.floor(gbr_fraction * num_ues + 0.5))
        mask = np.arange(num_ues) < num_gbr
        demands = np.full(num_ues, NON_GBR_DEMAND)
        if num_gbr:
            if not demand_levels:
                raise InvalidInputError("GBR UEs need at least one demand level")
            demands[:num_gbr] = np.resize(np.asarray(demand_levels, np.float64), num_gbr)
        return cls(gbr_mask=mask, gbr_demands=demands, speeds=np.asarray(speed, np.float64))

    def with_gbr_mask(self, gbr_mask: ArrayLike, demand_levels: Sequence[float]) -> UePopulation:
        """Same UEs with a different GBR mask, GBR demands cycled from `demand_levels`."""
        mask = np.asarray(gbr_mask, dtype=bool)
        demands = np.full(mask.shape, NON_GBR_DEMAND)
        demands[mask] = np.resize(np.asarray(demand_levels, np.float64), int(mask.sum()))
        return UePopulation(gbr_mask=mask, gbr_demands=demands, speeds=self.speeds)


@dataclass(frozen=True, eq=False)
class DemandVector:
    """`D = [R_1 .. R_M]` in bits/s plus the GBR mask."""

    values: NDArray[np.float64]
    gbr_mask: NDArray[np.bool_]

    def __post_init__(self) -> None:
        values = _frozen(self.values, np.float64)
        mask = _frozen(self.gbr_mask, bool)
        if values.ndim != 1 or values.shape != mask.shape or values.size < 1:
            raise DimensionError("demand values and GBR mask must be equal length vectors")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "gbr_mask", mask)

    @property
    def num_ues(self) -> int:
        """`M`."""
        return int(self.values.size)

    @property
    def num_gbr(self) -> int:
        """Number of GBR UEs."""
        return int(self.gbr_mask.sum())

    @property
    def bits_per_tti(self) -> NDArray[np.float64]:
        """Demands converted to bits per TTI."""
        return self.values * TTI_DURATION_S

    def features(self) -> NDArray[np.float64]:
        """ML feature vector: demand values followed by the mask as 0/1, length `2M`."""
        return np.concatenate([self.values, self.gbr_mask.astype(np.float64)])

    @classmethod
    def from_features(cls, features: ArrayLike) -> DemandVector:
        """Inverse of `features()`."""
        row = np.asarray(features, dtype=np.float64)
        if row.ndim != 1 or row.size % 2:
            raise DimensionError("feature rows have an even length 2M")
        half = row.size // 2
        return cls(values=row[:half], gbr_mask=row[half:] > 0.5)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DemandVector):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(
            self.gbr_mask, other.gbr_mask
        )

    __hash__ = None  # type: ignore[assignment]


def generate_demands(
    population: UePopulation,
    seed: SeedLike,
    perturbation: tuple[float, float] = DEFAULT_PERTURBATION,
) -> DemandVector:
    """Demand of every UE for one TTI.

    GBR UEs request `R_q(m)` scaled by a factor drawn uniformly from
    `perturbation`; best effort UEs request the sentinel. One factor is
    drawn per UE whether GBR or not.
    """
    low, high = perturbation
    if not 0 < low <= high:
        raise InvalidInputError(f"perturbation range must satisfy 0 < low <= high, got {perturbation}")
    factors = make_rng(seed).uniform(low, high, size=population.num_ues)
    if low == high:
        factors = np.full(population.num_ues, low)
    values = np.where(population.gbr_mask, population.gbr_demands * factors, NON_GBR_DEMAND)
    return DemandVector(values=values, gbr_mask=population.gbr_mask)
