"""Patch settings singletons for the duration of a block."""
from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Generator
    from typing import Any

    from pydantic import BaseSettings


@contextmanager
def modify_settings(*update: tuple[BaseSettings, dict[str, Any]]) -> Generator[None, None, None]:
    """Set fields on settings objects, restoring the old values on exit.

    Names a settings object doesn't have are ignored.

    >>> assert settings.sim.CSV_DECIMALS == 6
    >>> with modify_settings((settings.sim, {"CSV_DECIMALS": 3})):
    ...     assert settings.sim.CSV_DECIMALS == 3
    >>> assert settings.sim.CSV_DECIMALS == 6
    """
    saved: list[tuple[BaseSettings, dict[str, Any]]] = []
    try:
        for model, new_values in update:
            current = model.dict()
            saved.append((model, {name: current[name] for name in new_values if name in current}))
            for name in saved[-1][1]:
                setattr(model, name, new_values[name])
        yield
    finally:
        for model, old_values in reversed(saved):
            for name, value in old_values.items():
                setattr(model, name, value)
