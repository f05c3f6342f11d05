"""Config that can be shared between all test types."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

if TYPE_CHECKING:
    from collections.abc import Callable

    from lte_ga_scheduler.fitness import FitnessContext
    from lte_ga_scheduler.lte import McsTable

# Ensure that pytest_dotenv is loaded before
# so pytest_lte_ga_scheduler uses correct env values
pytest_plugins = ("pytest_dotenv", "pytest_lte_ga_scheduler.plugin")


@pytest.fixture(name="tiny_context")
def fx_tiny_context(toy_mcs_table: McsTable) -> Callable[..., FitnessContext]:
    """Random tiny fitness contexts on the toy table.

    Half the UEs are GBR, demanding between one and four RBs worth of
    the lowest rate.
    """
    from lte_ga_scheduler.fitness import FitnessContext, SchedulerWeights
    from lte_ga_scheduler.lte import CqiMatrix, DemandVector

    def wrapped(num_ues: int, num_rbs: int, w1: float, seed: int) -> FitnessContext:
        rng = np.random.default_rng(seed)
        cqi = CqiMatrix(rng.integers(1, 4, size=(num_ues, num_rbs)), levels=3)
        mask = np.arange(num_ues) < (num_ues + 1) // 2
        # bits/s, 1000 bits/s is one bit per TTI
        values = np.where(mask, rng.integers(1, 5, size=num_ues) * 1000.0, 0.0)
        demand = DemandVector(values=values, gbr_mask=mask)
        return FitnessContext.build(cqi, toy_mcs_table, demand, SchedulerWeights.from_w1(w1))

    return wrapped
