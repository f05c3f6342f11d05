"""Lloyd's k-means with k-means++ seeding and restarts."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import DimensionError, InsufficientDataError, InvalidInputError
from lte_ga_scheduler.utils import make_rng

from .database import DemandDatabase

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.utils import SeedLike

__all__ = [
    "DEFAULT_MAX_ITERS",
    "DEFAULT_N_INIT",
    "ClusterModel",
    "kmeans_fit",
    "nearest_centroid",
]

DEFAULT_MAX_ITERS = 100
DEFAULT_N_INIT = 4


def _squared_distances(rows: NDArray[np.float64], centroids: NDArray[np.float64]) -> NDArray:
    return ((rows[:, np.newaxis, :] - centroids[np.newaxis, :, :]) ** 2).sum(axis=2)


def nearest_centroid(
    rows: ArrayLike, centroids: ArrayLike
) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """Index of, and squared distance to, the nearest centroid of each row.

    Equidistant centroids resolve to the lowest index.
    """
    points = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    centers = np.atleast_2d(np.asarray(centroids, dtype=np.float64))
    if points.shape[1] != centers.shape[1]:
        raise DimensionError(f"rows have {points.shape[1]} features, centroids {centers.shape[1]}")
    distances = _squared_distances(points, centers)
    labels = np.argmin(distances, axis=1)
    return labels, distances[np.arange(points.shape[0]), labels]


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """A fitted partition of the demand database."""

    centroids: NDArray[np.float64]
    """`K x d`."""
    labels: NDArray[np.int64]
    """Cluster of each fitted row."""
    inertia: float
    """Sum of squared distances of the rows to their centroid."""
    inertia_history: tuple[float, ...]
    """Inertia after every Lloyd iteration of the retained restart."""

    @property
    def num_clusters(self) -> int:
        """`K`."""
        return int(self.centroids.shape[0])

    @property
    def sizes(self) -> NDArray[np.int64]:
        """Rows per cluster."""
        return np.bincount(self.labels, minlength=self.num_clusters)

    def predict(self, rows: ArrayLike) -> NDArray[np.int64]:
        """Nearest centroid of each row."""
        return nearest_centroid(rows, self.centroids)[0]


def _plus_plus_seeding(
    rows: NDArray[np.float64], k: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    centroids = [rows[rng.integers(rows.shape[0])]]
    for _ in range(1, k):
        _, distances = nearest_centroid(rows, np.stack(centroids))
        total = distances.sum()
        if total > 0:
            chosen = rng.choice(rows.shape[0], p=distances / total)
        else:
            chosen = rng.integers(rows.shape[0])
        centroids.append(rows[chosen])
    return np.stack(centroids)


def _repair_empty(
    rows: NDArray[np.float64], labels: NDArray[np.int64], centroids: NDArray[np.float64]
) -> NDArray[np.int64]:
    """Give every empty cluster the point farthest from the centroid of the largest one."""
    labels = labels.copy()
    k = centroids.shape[0]
    for empty in np.flatnonzero(np.bincount(labels, minlength=k) == 0):
        largest = int(np.argmax(np.bincount(labels, minlength=k)))
        members = np.flatnonzero(labels == largest)
        spread = ((rows[members] - centroids[largest]) ** 2).sum(axis=1)
        labels[members[int(np.argmax(spread))]] = empty
    return labels


def _means(rows: NDArray[np.float64], labels: NDArray[np.int64], k: int) -> NDArray[np.float64]:
    sums = np.zeros((k, rows.shape[1]))
    np.add.at(sums, labels, rows)
    return sums / np.bincount(labels, minlength=k)[:, np.newaxis]


def _lloyd(
    rows: NDArray[np.float64], k: int, max_iters: int, rng: np.random.Generator
) -> ClusterModel:
    centroids = _plus_plus_seeding(rows, k, rng)
    labels, _ = nearest_centroid(rows, centroids)
    history: list[float] = []
    for _ in range(max_iters):
        labels = _repair_empty(rows, labels, centroids)
        centroids = _means(rows, labels, k)
        new_labels, distances = nearest_centroid(rows, centroids)
        history.append(float(distances.sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    labels = _repair_empty(rows, labels, centroids)
    centroids = _means(rows, labels, k)
    inertia = float(((rows - centroids[labels]) ** 2).sum())
    centroids.setflags(write=False)
    labels.setflags(write=False)
    return ClusterModel(
        centroids=centroids, labels=labels, inertia=inertia, inertia_history=tuple(history)
    )


def kmeans_fit(
    db: DemandDatabase | ArrayLike,
    k: int,
    seed: SeedLike,
    max_iters: int = DEFAULT_MAX_ITERS,
    n_init: int = DEFAULT_N_INIT,
) -> ClusterModel:
    """Cluster the rows of `db` into `k` groups.

    Runs `n_init` k-means++/Lloyd restarts drawing from one seeded
    stream and keeps the one with the lowest inertia, the earliest on
    ties. A restart stops when assignments no longer change or after
    `max_iters` iterations.

    Args:
        db: Demand database, or a `rows x d` array.
        k: Number of clusters.
        seed: Seeds every restart.
        max_iters: Lloyd iteration cap per restart.
        n_init: Number of restarts.

    Raises:
        InsufficientDataError: If there are fewer than `k` rows.
    """
    rows = db.snapshot() if isinstance(db, DemandDatabase) else np.asarray(db, dtype=np.float64)
    if k < 1 or max_iters < 1 or n_init < 1:
        raise InvalidInputError("k, max_iters and n_init must all be >= 1")
    if rows.ndim != 2 or rows.shape[0] < k:
        raise InsufficientDataError(f"need at least {k} rows to fit {k} clusters")
    rng = make_rng(seed)
    restarts = [_lloyd(rows, k, max_iters, rng) for _ in range(n_init)]
    # min() returns the first of equal minima
    return min(restarts, key=lambda model: model.inertia)
