"""Byte identical output of repeated runs."""
from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from lte_ga_scheduler.scripts import main

if TYPE_CHECKING:
    from pathlib import Path

pytestmark = pytest.mark.acceptance


def test_simulate_twice(tmp_path: Path) -> None:
    """Same config file, same CSV bytes."""
    config = tmp_path / "scenario.toml"
    config.write_text('preset = "mixed_gbr"\nttis = 10\n\n[ga]\nmax_generations = 50\n')
    for name in ("first", "second"):
        assert main(["simulate", str(config), "--output-dir", str(tmp_path / name)]) == 0
    first = (tmp_path / "first" / "records.csv").read_bytes()
    assert first == (tmp_path / "second" / "records.csv").read_bytes()
    assert len(first.splitlines()) == 11
