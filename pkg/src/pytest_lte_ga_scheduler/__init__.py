"""Pytest plugin to support testing lte-ga-scheduler simulations."""
from __future__ import annotations

from .plugin import (
    fx_acceptance_seeds,
    fx_cap_logger,
    fx_default_mcs_table,
    fx_scenario_factory,
    fx_toy_mcs_table,
    pytest_addoption,
)
