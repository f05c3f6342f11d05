"""Application constants."""
from __future__ import annotations

from lte_ga_scheduler.settings import app
from lte_ga_scheduler.utils import case_insensitive_string_compare

IS_LOCAL_ENVIRONMENT = case_insensitive_string_compare(app.ENVIRONMENT, app.LOCAL_ENVIRONMENT_NAME)
"""Flag indicating if application is running in local development mode."""

TTI_DURATION_S = 1e-3
"""Length of one transmission time interval (one sub-frame), seconds."""

DEFAULT_CQI_LEVELS = 15
"""Number of CQI levels, entries are in `[1, DEFAULT_CQI_LEVELS]`."""

MOBILITY_REFERENCE_SPEED_KMH = 200.0
"""UE speed at which every CQI entry moves on every TTI."""

NON_GBR_DEMAND = 0.0
"""Demand value (bits/s) recorded for best-effort UEs."""

BANDWIDTH_RBS: dict[str, int] = {
    "1.4MHz": 6,
    "3MHz": 15,
    "5MHz": 25,
    "10MHz": 50,
    "15MHz": 75,
    "20MHz": 100,
}
"""Downlink resource blocks per channel bandwidth label."""
