"""Pytest plugin to support testing lte-ga-scheduler simulations."""
# pylint: disable=import-outside-toplevel
from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from structlog.contextvars import clear_contextvars
from structlog.testing import CapturingLogger

if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path
    from typing import Any

    from pytest import Config, MonkeyPatch, Parser

    from lte_ga_scheduler.harness import ScenarioConfig
    from lte_ga_scheduler.lte import McsTable

__all__ = (
    "fx_acceptance_seeds",
    "fx_cap_logger",
    "fx_default_mcs_table",
    "fx_scenario_factory",
    "fx_toy_mcs_table",
    "pytest_addoption",
)


def pytest_addoption(parser: Parser) -> None:
    """Adds Pytest ini config variables for the plugin."""
    parser.addini(
        "acceptance_seeds",
        "Number of seeds the multi-seed trend checks take their medians over.",
        type="string",
        default="10",
    )


@pytest.fixture(name="acceptance_seeds")
def fx_acceptance_seeds(pytestconfig: Config) -> int:
    """Seed count from the `acceptance_seeds` ini option."""
    return int(pytestconfig.getini("acceptance_seeds"))  # pyright:ignore


@pytest.fixture(name="toy_mcs_table")
def fx_toy_mcs_table() -> McsTable:
    """Three MCS levels, rates 1, 2 and 4 bits per RB, `Q = 3`."""
    from lte_ga_scheduler.lte import McsTable

    return McsTable(rates=[1.0, 2.0, 4.0], min_cqi=[1, 2, 3], cqi_levels=3)  # type:ignore[arg-type]


@pytest.fixture(name="default_mcs_table")
def fx_default_mcs_table() -> McsTable:
    """The table shipped with the package."""
    from lte_ga_scheduler.lte import load_mcs_table

    return load_mcs_table()


@pytest.fixture(name="scenario_factory")
def fx_scenario_factory(tmp_path: Path) -> Callable[..., ScenarioConfig]:
    """Builds small scenarios writing into the test's temporary directory.

    Keyword arguments are merged into the defaults like
    `ScenarioConfig.updated()` does, e.g. `scenario_factory(ga={"seed": 3})`.
    """
    from lte_ga_scheduler.harness import load_config

    def wrapped(preset: str | None = None, **changes: Any) -> ScenarioConfig:
        base = load_config(preset=preset).updated(
            num_ues=6,
            ttis=5,
            ga={"population_size": 20, "max_generations": 30, "stall_limit": 10},
            output={"directory": tmp_path / "results"},
        )
        return base.updated(**changes) if changes else base

    return wrapped


@pytest.fixture(name="cap_logger")
def fx_cap_logger(monkeypatch: MonkeyPatch) -> CapturingLogger:
    """Used to monkeypatch the simulation logger, so we can inspect output."""
    import lte_ga_scheduler

    lte_ga_scheduler.log.configure(
        lte_ga_scheduler.log.default_processors  # type:ignore[arg-type]
    )
    # clear context for every test
    clear_contextvars()
    # pylint: disable=protected-access
    logger = lte_ga_scheduler.log.simulation.LOGGER.bind()
    logger._logger = CapturingLogger()
    # drop rendering processor to get a dict, not bytes
    # noinspection PyProtectedMember
    logger._processors = lte_ga_scheduler.log.default_processors[:-1]
    monkeypatch.setattr(lte_ga_scheduler.log.simulation, "LOGGER", logger)
    return logger._logger
