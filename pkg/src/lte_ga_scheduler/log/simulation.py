"""Log config and utils for scenario runs.

One canonical log line is emitted per scheduled TTI, and another when a
run completes, both carrying the run context bound by `before_run()`.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

import structlog

from lte_ga_scheduler import settings

if TYPE_CHECKING:
    from typing import Any

    from lte_ga_scheduler.metrics import ScenarioSummary, TtiRecord

LOGGER = structlog.get_logger()


def before_run(**context: Any) -> None:
    """Clear the structlog contextvars and bind the context of a new run.

    Args:
        **context: Key/value pairs included in every log line of the run,
            e.g. `scenario`, `scheduler` and `repeat`.
    """
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**context)


def log_tti(record: TtiRecord) -> None:
    """Emit the canonical log line for a scheduled TTI."""
    log_ctx = {k: getattr(record, k) for k in settings.log.TTI_FIELDS}
    log_ctx["cell_bits"] = float(sum(record.per_ue_bits))
    LOGGER.debug(settings.log.TTI_EVENT, **log_ctx)


def after_run(summary: ScenarioSummary, **extra: Any) -> None:
    """Emit the run summary log line."""
    LOGGER.info(
        settings.log.RUN_EVENT,
        peak=summary.peak,
        average=summary.average,
        edge=summary.edge,
        jain=summary.jain,
        satisfaction=summary.satisfaction,
        **extra,
    )


def log_refit(**context: Any) -> None:
    """Emit the line for a recluster/retrain of the demand models."""
    LOGGER.info(settings.log.REFIT_EVENT, **context)


def log_study(study: str, **results: Any) -> None:
    """Emit the result line of a compare, sweep or warm-start study."""
    LOGGER.info(settings.log.STUDY_EVENT, study=study, **results)
