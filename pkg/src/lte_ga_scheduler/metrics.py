"""Per-TTI records and the evaluation metrics computed from them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError, UndefinedMetricError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.fitness import SchedulerWeights

__all__ = [
    "EDGE_PERCENTILE",
    "ScenarioSummary",
    "ThroughputStats",
    "TtiRecord",
    "jain_index",
    "satisfaction",
    "summarize",
    "throughput_stats",
]

EDGE_PERCENTILE = 5.0
"""Cell-edge throughput is this percentile of per-UE mean throughput."""


@dataclass(frozen=True, eq=False)
class TtiRecord:
    """What one scheduler did in one TTI."""

    tti: int
    scheduler: str
    per_ue_bits: NDArray[np.float64]
    """Achieved bits of every UE."""
    demand_bits: NDArray[np.float64]
    """Requested bits of every UE, zero for best effort UEs."""
    gbr_mask: NDArray[np.bool_]
    weights: SchedulerWeights | None = None
    cluster: int | None = None
    generations_used: int | None = None
    combined_fitness: float | None = None

    def __post_init__(self) -> None:
        bits = np.array(self.per_ue_bits, dtype=np.float64)
        if bits.ndim != 1 or bits.shape != np.shape(self.demand_bits):
            raise DimensionError("one achieved and one requested value per UE are required")
        if np.any(bits < 0):
            raise InvalidInputError("achieved bits must be >= 0")
        bits.setflags(write=False)
        object.__setattr__(self, "per_ue_bits", bits)

    @property
    def num_ues(self) -> int:
        """`M`."""
        return int(self.per_ue_bits.size)

    @property
    def w1(self) -> float | None:
        """Throughput weight, `None` for baseline schedulers."""
        return None if self.weights is None else self.weights.w1

    @property
    def w2(self) -> float | None:
        """GBR weight, `None` for baseline schedulers."""
        return None if self.weights is None else self.weights.w2


def jain_index(rates: ArrayLike) -> float:
    """`(sum r)^2 / (M * sum r^2)`.

    Raises:
        UndefinedMetricError: If every rate is zero.
    """
    values = np.asarray(rates, dtype=np.float64)
    if values.size == 0:
        raise DimensionError("need at least one rate")
    if not values.any():
        raise UndefinedMetricError("Jain's index is undefined for all-zero rates")
    # scaled to a unit maximum, squares neither underflow nor overflow
    scaled = values / np.abs(values).max()
    return float(scaled.sum() ** 2 / (values.size * np.square(scaled).sum()))


def satisfaction(rates: ArrayLike, demands: ArrayLike, gbr_mask: ArrayLike) -> float:
    """Mean over GBR UEs of `min(1, r / R)`.

    Raises:
        UndefinedMetricError: If no UE is GBR.
    """
    mask = np.asarray(gbr_mask, dtype=bool)
    achieved = np.asarray(rates, dtype=np.float64)
    wanted = np.asarray(demands, dtype=np.float64)
    if not achieved.shape == wanted.shape == mask.shape:
        raise DimensionError("rates, demands and GBR mask must have equal length")
    if not mask.any():
        raise UndefinedMetricError("satisfaction is undefined without GBR UEs")
    if np.any(wanted[mask] <= 0):
        raise InvalidInputError("GBR demands must be > 0")
    return float(np.minimum(1.0, achieved[mask] / wanted[mask]).mean())


class ThroughputStats(NamedTuple):
    """Statistics of per-UE mean throughput, bits/TTI."""

    peak: float
    average: float
    edge: float


def throughput_stats(records: Sequence[TtiRecord]) -> ThroughputStats:
    """Peak, average and cell-edge of per-UE mean throughput over `records`.

    The edge is the 5th percentile with linear interpolation. Peak bounds
    both other values, but the edge is not bounded by the average: one
    starved UE among many well served ones, e.g. `[0] + [10] * 20`, puts
    the mean below the percentile.
    """
    if not records:
        raise InvalidInputError("need at least one TTI record")
    per_ue = np.stack([record.per_ue_bits for record in records]).mean(axis=0)
    return ThroughputStats(
        peak=float(per_ue.max()),
        average=float(per_ue.mean()),
        edge=float(np.percentile(per_ue, EDGE_PERCENTILE, method="linear")),
    )


@dataclass(frozen=True)
class ScenarioSummary:
    """Run level results of one scheduler."""

    scheduler: str
    ttis: int
    peak: float
    average: float
    edge: float
    jain: float | None
    """Jain's index of per-UE mean throughput, `None` if nothing was served."""
    mean_tti_jain: float | None
    """Mean of the per-TTI Jain indices over TTIs that served anyone."""
    satisfaction: float | None
    """Mean per-TTI GBR satisfaction over TTIs with GBR UEs."""


def _defined(values: list[float | None]) -> float | None:
    present = [value for value in values if value is not None]
    return float(np.mean(present)) if present else None


def _try(metric: Callable[..., float], *args: ArrayLike) -> float | None:
    try:
        return metric(*args)
    except UndefinedMetricError:
        return None


def summarize(records: Sequence[TtiRecord]) -> ScenarioSummary:
    """Aggregate the records of one scheduler run."""
    stats = throughput_stats(records)
    per_ue = np.stack([record.per_ue_bits for record in records]).mean(axis=0)
    tti_jain = [_try(jain_index, record.per_ue_bits) for record in records]
    tti_satisfaction = [
        _try(satisfaction, record.per_ue_bits, record.demand_bits, record.gbr_mask)
        for record in records
    ]
    return ScenarioSummary(
        scheduler=records[0].scheduler,
        ttis=len(records),
        peak=stats.peak,
        average=stats.average,
        edge=stats.edge,
        jain=_try(jain_index, per_ue),
        mean_tti_jain=_defined(tti_jain),
        satisfaction=_defined(tti_satisfaction),
    )
