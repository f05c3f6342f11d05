"""CQI to MCS to per-RB rate mapping."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler import settings
from lte_ga_scheduler.constants import DEFAULT_CQI_LEVELS
from lte_ga_scheduler.exceptions import ConfigurationError, InvalidInputError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import ArrayLike, NDArray

__all__ = ["McsTable", "load_mcs_table", "TABLE_COLUMNS"]

TABLE_COLUMNS = ("mcs_index", "min_cqi", "rate_bits_per_rb_per_tti")
"""Required header of an MCS table file."""


@dataclass(frozen=True, eq=False)
class McsTable:
    """Per MCS index rate and the lowest CQI level that supports it.

    The CQI of a UE maps to the highest MCS index whose `min_cqi` does
    not exceed it.
    """

    rates: NDArray[np.float64]
    """`r(i)`, bits per RB per TTI, strictly increasing in the MCS index."""
    min_cqi: NDArray[np.int64]
    """Lowest CQI supporting each MCS index, monotone non-decreasing."""
    cqi_levels: int = DEFAULT_CQI_LEVELS
    """`Q`, CQI values are in `[1, Q]`."""
    _cqi_to_mcs: NDArray[np.int64] = field(init=False, repr=False)
    _rate_by_cqi: NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        rates = np.asarray(self.rates, dtype=np.float64)
        min_cqi = np.asarray(self.min_cqi, dtype=np.int64)
        if rates.ndim != 1 or rates.shape != min_cqi.shape or rates.size == 0:
            raise InvalidInputError("MCS table columns must be non-empty and of equal length")
        if np.any(np.diff(rates) <= 0):
            raise InvalidInputError("MCS rates must be strictly increasing")
        if np.any(np.diff(min_cqi) < 0):
            raise InvalidInputError("MCS min_cqi must be monotone non-decreasing")
        if self.cqi_levels < 1 or min_cqi[0] > 1 or min_cqi[-1] > self.cqi_levels:
            raise InvalidInputError(
                f"every CQI in [1, {self.cqi_levels}] must map to an MCS, got min_cqi {min_cqi}"
            )
        cqi = np.arange(self.cqi_levels + 1)
        cqi_to_mcs = np.searchsorted(min_cqi, cqi, side="right") - 1
        cqi_to_mcs[0] = -1
        # index 0 and Q + 1 are sentinels for "no RB assigned" lookups
        rate_by_cqi = np.zeros(self.cqi_levels + 2)
        rate_by_cqi[1 : self.cqi_levels + 1] = rates[cqi_to_mcs[1:]]
        for name, value in (
            ("rates", rates),
            ("min_cqi", min_cqi),
            ("_cqi_to_mcs", cqi_to_mcs),
            ("_rate_by_cqi", rate_by_cqi),
        ):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def num_mcs(self) -> int:
        """Number of MCS indices, `I`."""
        return int(self.rates.size)

    @property
    def rate_by_cqi(self) -> NDArray[np.float64]:
        """Rate lookup indexed by CQI, length `Q + 2`; entries `0` and `Q + 1` are zero."""
        return self._rate_by_cqi

    def check_cqi(self, cqi: ArrayLike) -> NDArray[np.int64]:
        """Validate CQI values against `[1, Q]`.

        Returns:
            `cqi` as an integer array.

        Raises:
            InvalidInputError: If any value is outside `[1, Q]`.
        """
        values = np.asarray(cqi)
        if values.size and (values.min() < 1 or values.max() > self.cqi_levels):
            raise InvalidInputError(f"CQI values must be in [1, {self.cqi_levels}]")
        return values.astype(np.int64, copy=False)

    def cqi_to_mcs(self, cqi: ArrayLike) -> NDArray[np.int64]:
        """Highest MCS index supported at each CQI value."""
        return self._cqi_to_mcs[self.check_cqi(cqi)]

    def rate_for_cqi(self, cqi: ArrayLike) -> NDArray[np.float64]:
        """`r(cqi_to_mcs(cqi))`, element-wise."""
        return self._rate_by_cqi[self.check_cqi(cqi)]

    @classmethod
    def from_rows(cls, rows: Iterable[dict[str, str]], cqi_levels: int | None = None) -> McsTable:
        """Build a table from parsed file rows.

        Args:
            rows: Mappings with the keys in `TABLE_COLUMNS`.
            cqi_levels: `Q`, defaults to the largest `min_cqi` in the rows.

        Raises:
            InvalidInputError: If the rows are malformed or out of order.
        """
        try:
            parsed = sorted(
                (int(row["mcs_index"]), int(row["min_cqi"]), float(row["rate_bits_per_rb_per_tti"]))
                for row in rows
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed MCS table row: {exc}") from exc
        if not parsed:
            raise InvalidInputError("MCS table is empty")
        if [index for index, _, _ in parsed] != list(range(len(parsed))):
            raise InvalidInputError("MCS indices must be 0..I-1 without gaps")
        min_cqi = np.array([c for _, c, _ in parsed], dtype=np.int64)
        rates = np.array([r for _, _, r in parsed], dtype=np.float64)
        levels = int(min_cqi.max()) if cqi_levels is None else cqi_levels
        return cls(rates=rates, min_cqi=min_cqi, cqi_levels=levels)


def _read_rows(text: str) -> list[dict[str, str]]:
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or tuple(reader.fieldnames) != TABLE_COLUMNS:
        raise InvalidInputError(f"MCS table header must be {','.join(TABLE_COLUMNS)}")
    return list(reader)


def load_mcs_table(path: Path | str | None = None, cqi_levels: int | None = None) -> McsTable:
    """Load an MCS table file.

    Args:
        path: Table file to read. Falls back to `SIM_MCS_TABLE`, then to the
            table shipped with the package.
        cqi_levels: Override `Q`, defaults to the table's largest `min_cqi`.

    Returns:
        The parsed table.

    Raises:
        ConfigurationError: If the table file can't be read.
    """
    if path is None:
        path = settings.sim.MCS_TABLE
    if path is None:
        text = resources.files("lte_ga_scheduler").joinpath("data/mcs_table.csv").read_text()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read MCS table {path}: {exc}") from exc
    return McsTable.from_rows(_read_rows(text), cqi_levels=cqi_levels)
