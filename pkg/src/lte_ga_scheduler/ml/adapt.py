"""Objective weights from the GBR mix of the current demand."""
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from lte_ga_scheduler.fitness import SchedulerWeights

if TYPE_CHECKING:
    from lte_ga_scheduler.lte.traffic import DemandVector

__all__ = ["adapt_weights"]


def adapt_weights(demand: DemandVector) -> SchedulerWeights:
    """Weights for one TTI.

    All GBR gives `(0, 1)`, no GBR `(1, 0)`, and a mix gives
    `w2 = #GBR / M`, `w1 = 1 - w2`, computed exactly.
    """
    return SchedulerWeights.from_w2(Fraction(demand.num_gbr, demand.num_ues))
