"""Tests for CSV and summary output."""
from __future__ import annotations

import io
from typing import TYPE_CHECKING

import msgspec
import numpy as np
import pytest

from lte_ga_scheduler.exceptions import OutputError
from lte_ga_scheduler.fitness import SchedulerWeights
from lte_ga_scheduler.harness import ScenarioConfig, report
from lte_ga_scheduler.metrics import TtiRecord, summarize
from lte_ga_scheduler.testing import modify_settings

if TYPE_CHECKING:
    from pathlib import Path


def _record() -> TtiRecord:
    return TtiRecord(
        tti=3,
        scheduler="ga_adaptive",
        per_ue_bits=np.array([1.5, 0.0]),
        demand_bits=np.array([2.0, 0.0]),
        gbr_mask=np.array([True, False]),
        weights=SchedulerWeights.from_w1(0.5),
        cluster=1,
        generations_used=12,
        combined_fitness=0.25,
    )


def test_header() -> None:
    """Fixed leading columns, then one column per UE."""
    assert report.csv_header(2) == [*report.RECORD_COLUMNS, "ue_0", "ue_1"]


def test_record_row() -> None:
    """Reals rounded half to even, absent values empty."""
    assert report.record_row(_record()) == [
        "3",
        "ga_adaptive",
        "0.500000",
        "0.500000",
        "1",
        "12",
        "0.250000",
        "1.500000",
        "0.000000",
    ]
    assert report.format_field(None) == ""


def test_decimals_setting() -> None:
    """`SIM_CSV_DECIMALS` controls the precision."""
    with modify_settings((report.settings.sim, {"CSV_DECIMALS": 2})):
        assert report.format_field(0.125) == "0.12"
        assert report.format_field(0.375) == "0.38"


def test_record_writer() -> None:
    """Header first, one line per record."""
    stream = io.StringIO()
    writer = report.RecordWriter(stream, num_ues=2)
    writer.write_all([_record(), _record()])
    lines = stream.getvalue().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("tti,scheduler,w1,w2")


def test_summary_document(tmp_path: Path) -> None:
    """App, config echo and summaries."""
    path = tmp_path / "out" / "summary.json"
    config = ScenarioConfig(num_ues=2)
    report.write_summary(path, config, [summarize([_record()])], extra={"value": np.float64(2)})
    document = msgspec.json.decode(path.read_bytes())
    assert document["app"]["environment"] == report.settings.app.ENVIRONMENT
    assert document["config"]["num_ues"] == 2
    assert document["config"]["seeds"] == {"channel": 1, "traffic": 2, "ml": 3, "repeat": 0}
    assert document["config"]["output"]["directory"] == "results"
    assert document["summaries"][0]["scheduler"] == "ga_adaptive"
    assert document["extra"] == {"value": 2.0}


def test_unwritable(tmp_path: Path) -> None:
    """File system failures become output errors."""
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(OutputError):
        report.write_summary(blocker / "summary.json", ScenarioConfig(), [])
    with pytest.raises(OutputError), report.RecordWriter.open(blocker / "x.csv", 1):
        pass
