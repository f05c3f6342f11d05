"""Tests for the demand database."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from lte_ga_scheduler.exceptions import (
    DimensionError,
    InsufficientDataError,
    InvalidInputError,
    OutputError,
)
from lte_ga_scheduler.lte import DemandVector
from lte_ga_scheduler.ml import DemandDatabase

if TYPE_CHECKING:
    from pathlib import Path


def _demand(*values: float) -> DemandVector:
    array = np.array(values)
    return DemandVector(values=array, gbr_mask=array > 0)


def test_fifo_eviction() -> None:
    """The oldest row goes once the capacity is reached."""
    database = DemandDatabase(capacity=2)
    for value in (1.0, 2.0, 3.0):
        database.append(_demand(value, 0.0))
    assert len(database) == 2
    assert [demand.values[0] for demand in database] == [2.0, 3.0]
    np.testing.assert_array_equal(database.snapshot()[:, 0], [2.0, 3.0])
    assert database.num_features == 4


def test_row_width_fixed() -> None:
    """All rows share one `M`."""
    database = DemandDatabase()
    database.append(_demand(1.0, 0.0))
    with pytest.raises(DimensionError):
        database.append(_demand(1.0, 0.0, 2.0))
    with pytest.raises(DimensionError):
        database.append_features(np.ones(3))


def test_empty_snapshot_and_capacity() -> None:
    """Nothing to snapshot when empty, capacity at least one."""
    with pytest.raises(InsufficientDataError):
        DemandDatabase().snapshot()
    with pytest.raises(InvalidInputError):
        DemandDatabase(capacity=0)


def test_export_and_load(tmp_path: Path) -> None:
    """One demand vector per line, read back unchanged."""
    database = DemandDatabase()
    database.append(_demand(128000.0, 0.0, 256000.5))
    database.append(_demand(0.0, 0.0, 384000.0))
    path = tmp_path / "demands.txt"
    database.export(path)
    assert len(path.read_text().splitlines()) == 2
    loaded = DemandDatabase.load(path)
    assert loaded.capacity == 2
    np.testing.assert_array_equal(loaded.snapshot(), database.snapshot())


def test_load_errors(tmp_path: Path) -> None:
    """Missing files and malformed rows."""
    with pytest.raises(OutputError):
        DemandDatabase.load(tmp_path / "missing.txt")
    path = tmp_path / "odd.txt"
    path.write_text("1 2 3\n", encoding="utf-8")
    with pytest.raises(DimensionError):
        DemandDatabase.load(path)


def test_export_unwritable(tmp_path: Path) -> None:
    """Export into a missing directory fails as an output error."""
    database = DemandDatabase()
    database.append(_demand(1.0))
    with pytest.raises(OutputError):
        database.export(tmp_path / "missing" / "demands.txt")
