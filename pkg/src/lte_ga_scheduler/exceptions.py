"""lte-ga-scheduler exception types.

Every error raised on purpose by the library derives from
`LteGaSchedulerError`. The `exit_code` class attribute is what the
command line entry point exits with when the error escapes a command.
"""
from __future__ import annotations

from typing import ClassVar

__all__ = (
    "ConfigurationError",
    "DegenerateScenarioError",
    "DimensionError",
    "InsufficientDataError",
    "InvalidInputError",
    "LteGaSchedulerError",
    "OutputError",
    "UndefinedMetricError",
)


class LteGaSchedulerError(Exception):
    """Base exception type for the lib's custom exception types."""

    exit_code: ClassVar[int] = 1
    """Process exit status used by the CLI."""


class InvalidInputError(LteGaSchedulerError, ValueError):
    """A value is outside of its documented domain."""


class DimensionError(InvalidInputError):
    """Array or sequence shapes disagree with the scenario dimensions."""


class InsufficientDataError(LteGaSchedulerError):
    """Not enough samples to fit a model."""


class UndefinedMetricError(LteGaSchedulerError, ArithmeticError):
    """A metric is undefined for the given input."""


class ConfigurationError(LteGaSchedulerError):
    """Scenario config file or command line flags are invalid."""

    exit_code = 2


class DegenerateScenarioError(LteGaSchedulerError):
    """Nothing to optimize: zero efficiency grid and no GBR demand."""

    exit_code = 3

    def __init__(self, message: str, tti: int | None = None) -> None:
        """

        Args:
            message: description of the degenerate condition.
            tti: index of the TTI being scheduled, if known.
        """
        if tti is not None:
            message = f"TTI {tti}: {message}"
        super().__init__(message)
        self.tti = tti


class OutputError(LteGaSchedulerError, OSError):
    """An output artifact cannot be written."""

    exit_code = 4
