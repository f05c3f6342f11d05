"""The demand pattern database the clustering runs on."""
from __future__ import annotations

from collections import deque
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import (
    DimensionError,
    InsufficientDataError,
    InvalidInputError,
    OutputError,
)
from lte_ga_scheduler.lte.traffic import DemandVector

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

    from numpy.typing import NDArray

__all__ = ["DEFAULT_CAPACITY", "DemandDatabase"]

DEFAULT_CAPACITY = 1000
"""`N_db`, rows kept before the oldest is evicted."""


class DemandDatabase:
    """Bounded FIFO of observed demand vectors, all of the same `M`.

    Rows are stored as feature vectors, see `DemandVector.features()`.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY) -> None:
        if capacity < 1:
            raise InvalidInputError(f"capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._rows: deque[NDArray[np.float64]] = deque(maxlen=capacity)
        self._width: int | None = None

    def __len__(self) -> int:
        return len(self._rows)

    def __iter__(self) -> Iterator[DemandVector]:
        return (DemandVector.from_features(row) for row in self._rows)

    @property
    def num_features(self) -> int | None:
        """Feature width `2M`, `None` while empty."""
        return self._width

    def append(self, demand: DemandVector) -> None:
        """Add a row, evicting the oldest once at capacity.

        Raises:
            DimensionError: If `demand` has a different `M` than the rows stored.
        """
        self.append_features(demand.features())

    def append_features(self, row: NDArray[np.float64]) -> None:
        """Add a raw feature row."""
        features = np.array(row, dtype=np.float64)
        if features.ndim != 1 or features.size == 0 or features.size % 2:
            raise DimensionError("feature rows are non-empty vectors of even length 2M")
        if self._width is None:
            self._width = features.size
        elif features.size != self._width:
            raise DimensionError(f"row has {features.size} features, database has {self._width}")
        features.setflags(write=False)
        self._rows.append(features)

    def snapshot(self) -> NDArray[np.float64]:
        """Copy of all rows, oldest first, shape `rows x 2M`.

        Raises:
            InsufficientDataError: If the database is empty.
        """
        if not self._rows:
            raise InsufficientDataError("demand database is empty")
        return np.stack(list(self._rows))

    def export(self, path: Path) -> None:
        """Write one row per line, values then GBR mask, whitespace separated."""
        try:
            np.savetxt(path, self.snapshot(), fmt="%.17g")
        except OSError as exc:
            raise OutputError(f"cannot write demand database to {path}: {exc}") from exc

    @classmethod
    def load(cls, path: Path, capacity: int | None = None) -> DemandDatabase:
        """Read a file written by `export()`.

        The capacity defaults to the number of rows in the file.
        """
        try:
            rows = np.loadtxt(path, dtype=np.float64, ndmin=2)
        except OSError as exc:
            raise OutputError(f"cannot read demand database {path}: {exc}") from exc
        except ValueError as exc:
            raise DimensionError(f"malformed demand database {path}: {exc}") from exc
        database = cls(capacity=capacity or max(rows.shape[0], 1))
        for row in rows:
            database.append_features(row)
        return database
