"""Process configuration via environment.

Take note of the environment variable prefixes required for each
settings class, except `AppSettings`.

Scenario parameters (UE counts, GA sizes, seeds...) are not read from
the environment, they come from the scenario config file, see
[`ScenarioConfig`][lte_ga_scheduler.harness.config.ScenarioConfig].
"""
from __future__ import annotations

# pylint: disable=missing-class-docstring
from pathlib import Path

from pydantic import BaseSettings


# noinspection PyUnresolvedReferences
class AppSettings(BaseSettings):
    """Generic application settings.

    These settings are echoed into every run summary document, so do
    not include any sensitive values here.
    """

    class Config:
        case_sensitive = True
        env_file = ".env"

    ENVIRONMENT: str = "prod"
    """'dev', 'prod', etc."""
    LOCAL_ENVIRONMENT_NAME: str = "local"
    """Value of ENVIRONMENT used to determine if running in local development
    mode.

    This should be the value of `ENVIRONMENT` in your local `.env` file.
    """
    NAME: str = "lte-ga-scheduler"
    """Application name."""


class LogSettings(BaseSettings):
    """Logging config for the application."""

    class Config:
        case_sensitive = True
        env_file = ".env"
        env_prefix = "LOG_"

    LEVEL: int = 20
    """Stdlib log levels.

    Only emit logs at this level, or higher.
    """
    TTI_EVENT: str = "TTI"
    """Log event name for the canonical line emitted per scheduled TTI."""
    RUN_EVENT: str = "Run"
    """Log event name for the line emitted at the end of a scenario run."""
    REFIT_EVENT: str = "Refit"
    """Log event name for reclustering/retraining of the demand models."""
    STUDY_EVENT: str = "Study"
    """Log event name for compare/sweep/warm-start study results."""
    TTI_FIELDS: list[str] = [
        "tti",
        "scheduler",
        "w1",
        "w2",
        "cluster",
        "generations_used",
        "combined_fitness",
    ]
    """Attributes of the
    [`TtiRecord`][lte_ga_scheduler.metrics.TtiRecord] to be logged."""


class SimulationSettings(BaseSettings):
    """Numerical and output defaults shared by every scenario."""

    class Config:
        case_sensitive = True
        env_file = ".env"
        env_prefix = "SIM_"

    MCS_TABLE: Path | None = None
    """Path to an MCS table file, overrides the packaged default table."""
    CSV_DECIMALS: int = 6
    """Decimal places for reals written to the per-TTI CSV."""
    FITNESS_ATOL: float = 1e-9
    """Absolute tolerance when comparing combined fitness values."""


# `.parse_obj()` thing is a workaround for pyright and pydantic interplay, see:
# https://github.com/pydantic/pydantic/issues/3753#issuecomment-1087417884
app = AppSettings.parse_obj({})
"""App settings."""
log = LogSettings.parse_obj({})
"""Log settings."""
sim = SimulationSettings.parse_obj({})
"""Simulation settings."""
