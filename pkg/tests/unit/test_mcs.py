"""Tests for the MCS table."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from lte_ga_scheduler import settings
from lte_ga_scheduler.exceptions import ConfigurationError, InvalidInputError
from lte_ga_scheduler.lte import McsTable, load_mcs_table
from lte_ga_scheduler.testing import modify_settings

if TYPE_CHECKING:
    from pathlib import Path


def test_default_table(default_mcs_table: McsTable) -> None:
    """15 CQI levels, one MCS each, increasing rates."""
    assert default_mcs_table.cqi_levels == 15
    assert default_mcs_table.num_mcs == 15
    assert np.all(np.diff(default_mcs_table.rates) > 0)
    np.testing.assert_array_equal(default_mcs_table.cqi_to_mcs([1, 15]), [0, 14])


def test_toy_table_lookups(toy_mcs_table: McsTable) -> None:
    """CQI 1, 2, 3 map to MCS 0, 1, 2 and rates 1, 2, 4."""
    np.testing.assert_array_equal(toy_mcs_table.cqi_to_mcs([1, 2, 3]), [0, 1, 2])
    np.testing.assert_array_equal(toy_mcs_table.rate_for_cqi([[1, 3]]), [[1.0, 4.0]])


def test_cqi_maps_to_highest_supported_mcs() -> None:
    """Several MCS share a threshold, the highest wins; gaps reuse the lower MCS."""
    table = McsTable(rates=[1.0, 2.0, 3.0], min_cqi=[1, 1, 3], cqi_levels=4)  # type:ignore[arg-type]
    np.testing.assert_array_equal(table.cqi_to_mcs([1, 2, 3, 4]), [1, 1, 2, 2])


@pytest.mark.parametrize("cqi", [0, 4, -1])
def test_out_of_range_cqi(toy_mcs_table: McsTable, cqi: int) -> None:
    """CQI outside `[1, Q]` is rejected."""
    with pytest.raises(InvalidInputError):
        toy_mcs_table.rate_for_cqi([cqi])


@pytest.mark.parametrize(
    ("rates", "min_cqi"),
    [
        ([1.0, 1.0], [1, 2]),
        ([2.0, 1.0], [1, 2]),
        ([1.0, 2.0], [2, 1]),
        ([1.0, 2.0], [2, 3]),
        ([1.0], [1, 2]),
        ([], []),
    ],
)
def test_invalid_tables(rates: list[float], min_cqi: list[int]) -> None:
    """Rates strictly increasing, thresholds monotone, CQI 1 covered."""
    with pytest.raises(InvalidInputError):
        McsTable(rates=rates, min_cqi=min_cqi, cqi_levels=3)  # type:ignore[arg-type]


def test_load_table_file(tmp_path: Path) -> None:
    """Header checked, comments skipped, rows may come in any order."""
    path = tmp_path / "table.csv"
    path.write_text(
        "# toy\nmcs_index,min_cqi,rate_bits_per_rb_per_tti\n1,2,20\n0,1,10\n",
        encoding="utf-8",
    )
    table = load_mcs_table(path)
    assert table.cqi_levels == 2
    np.testing.assert_array_equal(table.rates, [10.0, 20.0])


def test_load_table_from_settings(tmp_path: Path) -> None:
    """`SIM_MCS_TABLE` replaces the packaged table."""
    path = tmp_path / "table.csv"
    path.write_text("mcs_index,min_cqi,rate_bits_per_rb_per_tti\n0,1,7\n", encoding="utf-8")
    with modify_settings((settings.sim, {"MCS_TABLE": path})):
        assert load_mcs_table().rates.tolist() == [7.0]


def test_load_table_bad_rows(tmp_path: Path) -> None:
    """Gaps in the MCS indices are rejected."""
    path = tmp_path / "table.csv"
    path.write_text("mcs_index,min_cqi,rate_bits_per_rb_per_tti\n0,1,7\n2,2,9\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_mcs_table(path)


def test_load_table_missing_file(tmp_path: Path) -> None:
    """An unreadable table file is a configuration error."""
    with pytest.raises(ConfigurationError):
        load_mcs_table(tmp_path / "missing.csv")
