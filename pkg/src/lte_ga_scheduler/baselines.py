"""Reference schedulers: Maximum Throughput and Proportional Fair.

Both decide per RB from the efficiency grid and ignore the one MCS per
UE rule; the rates they achieve are still computed with it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError
from lte_ga_scheduler.fitness import AllocationPattern

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

__all__ = [
    "DEFAULT_PF_FLOOR",
    "DEFAULT_PF_TIME_CONSTANT",
    "PfState",
    "max_tp_schedule",
    "pf_schedule",
    "pf_update",
]

DEFAULT_PF_TIME_CONSTANT = 10.0
"""`t_c` in TTIs."""
DEFAULT_PF_FLOOR = 1.0
"""`ε`, bits/TTI."""


def max_tp_schedule(efficiency: ArrayLike) -> AllocationPattern:
    """Give each RB to the UE with the highest rate on it, the lowest index on ties."""
    grid = np.asarray(efficiency, dtype=np.float64)
    if grid.ndim != 2:
        raise DimensionError("efficiency grid must be M x N")
    return AllocationPattern(np.argmax(grid, axis=0))


@dataclass(frozen=True, eq=False)
class PfState:
    """Exponentially averaged throughput of every UE, bits/TTI."""

    averages: NDArray[np.float64]
    time_constant: float = DEFAULT_PF_TIME_CONSTANT
    floor: float = DEFAULT_PF_FLOOR

    def __post_init__(self) -> None:
        if self.time_constant < 1:
            raise InvalidInputError(f"time constant must be >= 1 TTI, got {self.time_constant}")
        if self.floor <= 0:
            raise InvalidInputError(f"average floor must be > 0, got {self.floor}")
        averages = np.maximum(np.array(self.averages, dtype=np.float64), self.floor)
        averages.setflags(write=False)
        object.__setattr__(self, "averages", averages)

    @classmethod
    def initial(
        cls,
        num_ues: int,
        time_constant: float = DEFAULT_PF_TIME_CONSTANT,
        floor: float = DEFAULT_PF_FLOOR,
    ) -> PfState:
        """Every average at the floor."""
        return cls(averages=np.full(num_ues, floor), time_constant=time_constant, floor=floor)


def pf_schedule(efficiency: ArrayLike, state: PfState) -> AllocationPattern:
    """Give each RB to the UE maximizing `C(m, n) / avg(m)`, the lowest index on ties."""
    grid = np.asarray(efficiency, dtype=np.float64)
    if grid.ndim != 2 or grid.shape[0] != state.averages.size:
        raise DimensionError(f"grid has {grid.shape[0]} UEs, PF state {state.averages.size}")
    return max_tp_schedule(grid / state.averages[:, np.newaxis])


def pf_update(state: PfState, achieved: ArrayLike) -> PfState:
    """`avg <- (1 - 1/t_c) avg + (1/t_c) achieved`, floored at `ε`."""
    rates = np.asarray(achieved, dtype=np.float64)
    if rates.shape != state.averages.shape:
        raise DimensionError(f"{rates.size} rates for {state.averages.size} UEs")
    step = 1.0 / state.time_constant
    return PfState(
        averages=(1.0 - step) * state.averages + step * rates,
        time_constant=state.time_constant,
        floor=state.floor,
    )
