"""CSV and summary document output.

The per-TTI CSV has a fixed column order, `tti, scheduler, w1, w2,
cluster, generations_used, combined_fitness, ue_0 .. ue_{M-1}`. Reals
are written with `SIM_CSV_DECIMALS` decimals, rounded half to even, and
absent values as empty fields, so identical runs give identical bytes.
"""
from __future__ import annotations

import csv
from contextlib import contextmanager
from typing import TYPE_CHECKING, Any

import msgspec

from lte_ga_scheduler import settings
from lte_ga_scheduler.exceptions import OutputError
from lte_ga_scheduler.log.utils import enc_hook
from lte_ga_scheduler.utils import format_real

if TYPE_CHECKING:
    from collections.abc import Generator, Iterable, Sequence
    from pathlib import Path
    from typing import IO

    from lte_ga_scheduler.metrics import ScenarioSummary, TtiRecord

    from .config import ScenarioConfig

__all__ = [
    "RECORD_COLUMNS",
    "RecordWriter",
    "csv_header",
    "format_field",
    "prepare_directory",
    "record_row",
    "write_summary",
]

RECORD_COLUMNS = (
    "tti",
    "scheduler",
    "w1",
    "w2",
    "cluster",
    "generations_used",
    "combined_fitness",
)
"""Leading CSV columns, followed by one `ue_<m>` column per UE."""

_encoder = msgspec.json.Encoder(enc_hook=enc_hook)


def csv_header(num_ues: int) -> list[str]:
    """Column names for `num_ues` UEs."""
    return [*RECORD_COLUMNS, *(f"ue_{ue}" for ue in range(num_ues))]


def format_field(value: Any) -> str:
    """CSV text of one value."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format_real(value, settings.sim.CSV_DECIMALS)
    return str(value)


def record_row(record: TtiRecord) -> list[str]:
    """CSV row of a record."""
    leading = [getattr(record, column) for column in RECORD_COLUMNS]
    bits = [float(value) for value in record.per_ue_bits]
    return [format_field(value) for value in (*leading, *bits)]


def prepare_directory(path: Path) -> None:
    """Create the parent directory of `path`.

    Raises:
        OutputError: If that fails.
    """
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {path.parent}: {exc}") from exc


class RecordWriter:
    """Writes `TtiRecord`s to an open CSV file."""

    def __init__(self, stream: IO[str], num_ues: int) -> None:
        self.num_ues = num_ues
        self._writer = csv.writer(stream, lineterminator="\n")
        self._writer.writerow(csv_header(num_ues))

    def write(self, record: TtiRecord) -> None:
        """Append the row of `record`."""
        self._writer.writerow(record_row(record))

    def write_all(self, records: Iterable[TtiRecord]) -> None:
        """Append the rows of `records`, in order."""
        for record in records:
            self.write(record)

    @classmethod
    @contextmanager
    def open(cls, path: Path, num_ues: int) -> Generator[RecordWriter, None, None]:
        """Create `path`, header included, and yield a writer on it.

        Raises:
            OutputError: If the file can't be created. Raised on entry, so
                nothing is simulated for an unwritable path.
        """
        prepare_directory(path)
        try:
            stream = path.open("w", encoding="utf-8", newline="")
        except OSError as exc:
            raise OutputError(f"cannot write CSV to {path}: {exc}") from exc
        with stream:
            yield cls(stream, num_ues)


def write_summary(
    path: Path,
    config: ScenarioConfig,
    summaries: Sequence[ScenarioSummary],
    **sections: Any,
) -> None:
    """Write the summary document: app settings, config echo, results.

    Args:
        path: Destination, JSON.
        config: Scenario, echoed in full, seeds included.
        summaries: One per scheduler run.
        **sections: Extra top level sections, e.g. study tables.
    """
    document = {
        "app": {"name": settings.app.NAME, "environment": settings.app.ENVIRONMENT},
        "config": config.dict(),
        "summaries": list(summaries),
        **sections,
    }
    prepare_directory(path)
    try:
        path.write_bytes(msgspec.json.format(_encoder.encode(document), indent=2) + b"\n")
    except OSError as exc:
        raise OutputError(f"cannot write summary to {path}: {exc}") from exc
