"""All the logging config and things are in here."""

from __future__ import annotations

import sys
from typing import TYPE_CHECKING

import structlog

from lte_ga_scheduler import settings
from lte_ga_scheduler.constants import IS_LOCAL_ENVIRONMENT

from . import simulation
from .utils import msgspec_json_renderer

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any

    from structlog.types import Processor

__all__ = (
    "default_processors",
    "configure",
    "simulation",
)


default_processors = [
    structlog.contextvars.merge_contextvars,
    structlog.processors.add_log_level,
    structlog.processors.TimeStamper(fmt="iso", utc=True),
]

if IS_LOCAL_ENVIRONMENT:  # pragma: no cover
    LoggerFactory: Any = structlog.WriteLoggerFactory
    log_file: Any = sys.stderr
    default_processors.extend([structlog.dev.ConsoleRenderer(colors=True)])
else:
    LoggerFactory = structlog.BytesLoggerFactory
    log_file = sys.stderr.buffer
    default_processors.extend([structlog.processors.dict_tracebacks, msgspec_json_renderer])


def configure(processors: Sequence[Processor]) -> None:
    """Call to configure `structlog` before a command runs.

    The calls to `structlog.get_logger()` in `simulation.py` and the
    study modules return proxies to the logger that is eventually called
    after this configurator function has been called. Therefore, nothing
    should try to log via structlog before this is called.

    Logs are written to stderr, stdout is reserved for reports.
    """
    structlog.configure(
        cache_logger_on_first_use=True,
        logger_factory=LoggerFactory(file=log_file),
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(settings.log.LEVEL),
    )
