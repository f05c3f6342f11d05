"""Synthetic channel: CQI matrices, mobility random walk and the efficiency grid."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.constants import DEFAULT_CQI_LEVELS, MOBILITY_REFERENCE_SPEED_KMH
from lte_ga_scheduler.exceptions import DimensionError, InvalidInputError
from lte_ga_scheduler.utils import make_rng

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.utils import SeedLike

    from .mcs import McsTable

__all__ = [
    "CqiMatrix",
    "build_efficiency_matrix",
    "init_cqi",
    "step_cqi",
]


@dataclass(frozen=True, eq=False)
class CqiMatrix:
    """Per (UE, RB) channel quality indices `j(m, n)`, shape `M x N`."""

    values: NDArray[np.int64]
    levels: int = DEFAULT_CQI_LEVELS

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.int64)
        if values.ndim != 2 or 0 in values.shape:
            raise DimensionError(f"CQI matrix must be a non-empty 2-D grid, got {values.shape}")
        if values.min() < 1 or values.max() > self.levels:
            raise InvalidInputError(f"CQI values must be in [1, {self.levels}]")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def num_ues(self) -> int:
        """`M`."""
        return int(self.values.shape[0])

    @property
    def num_rbs(self) -> int:
        """`N`."""
        return int(self.values.shape[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CqiMatrix):
            return NotImplemented
        return self.levels == other.levels and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore[assignment]


def _check_speeds(speeds: ArrayLike, num_ues: int) -> NDArray[np.float64]:
    values = np.broadcast_to(np.asarray(speeds, dtype=np.float64), (num_ues,))
    if np.any(values < 0):
        raise InvalidInputError("UE speeds must be >= 0 km/h")
    return values


def init_cqi(
    seed: SeedLike,
    num_ues: int,
    num_rbs: int,
    speeds: ArrayLike = 0.0,
    levels: int = DEFAULT_CQI_LEVELS,
    rb_spread: int | None = None,
) -> CqiMatrix:
    """Draw the initial channel.

    Without an RB spread every entry is uniform over `[1, levels]`, all
    UEs statistically alike. With one, UE `m` gets a geometry level, the
    levels evenly spaced over `[1, levels]` and shuffled across UEs, and
    each of its RBs sits uniformly within `rb_spread` of that level,
    clamped to `[1, levels]`.

    Args:
        seed: Seed or generator of the channel stream.
        num_ues: `M`.
        num_rbs: `N`.
        speeds: Per UE speed in km/h (scalar broadcasts). Validated only,
            the initial draw doesn't depend on it.
        levels: `Q`.
        rb_spread: Per RB spread around the UE's geometry level.
    """
    if num_ues < 1 or num_rbs < 1:
        raise DimensionError(f"need M, N >= 1, got M={num_ues}, N={num_rbs}")
    if rb_spread is not None and rb_spread < 0:
        raise InvalidInputError(f"RB spread must be >= 0, got {rb_spread}")
    _check_speeds(speeds, num_ues)
    rng = make_rng(seed)
    if rb_spread is None:
        return CqiMatrix(rng.integers(1, levels + 1, size=(num_ues, num_rbs)), levels=levels)
    geometry = rng.permutation(np.rint(np.linspace(1, levels, num_ues)).astype(np.int64))
    offsets = rng.integers(-rb_spread, rb_spread + 1, size=(num_ues, num_rbs))
    return CqiMatrix(np.clip(geometry[:, np.newaxis] + offsets, 1, levels), levels=levels)


def step_cqi(cqi: CqiMatrix, speeds: ArrayLike, seed_stream: SeedLike) -> CqiMatrix:
    """Advance the channel by one TTI.

    Each entry moves by +/-1 (clamped to `[1, Q]`) with probability
    `min(1, speed / 200 km/h)` of its UE. Both random draws are made
    for every entry regardless of speed, so the stream advances the same
    amount on every call.

    Args:
        cqi: Current channel.
        speeds: Per UE speed in km/h (scalar broadcasts).
        seed_stream: Generator shared across TTIs, or a seed.
    """
    rng = make_rng(seed_stream)
    speed = _check_speeds(speeds, cqi.num_ues)
    probability = np.minimum(1.0, speed / MOBILITY_REFERENCE_SPEED_KMH)
    moves = rng.random(cqi.values.shape) < probability[:, np.newaxis]
    signs = rng.integers(0, 2, size=cqi.values.shape) * 2 - 1
    stepped = np.clip(cqi.values + moves * signs, 1, cqi.levels)
    return CqiMatrix(stepped, levels=cqi.levels)


def build_efficiency_matrix(cqi: CqiMatrix | ArrayLike, table: McsTable) -> NDArray[np.float64]:
    """Efficiency grid `C`.

    `C(m, n) = r(cqi_to_mcs(j(m, n)))`, the rate UE `m` would get on RB
    `n` if it held that RB alone.

    Raises:
        InvalidInputError: If a CQI is outside the table's `[1, Q]`.
    """
    values = cqi.values if isinstance(cqi, CqiMatrix) else np.asarray(cqi)
    if values.ndim != 2:
        raise DimensionError(f"CQI grid must be 2-D, got {values.shape}")
    return table.rate_for_cqi(values)
