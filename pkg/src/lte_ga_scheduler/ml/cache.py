"""RBs-UEs mapping cache: one optimized pattern per demand cluster."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import InvalidInputError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

    from lte_ga_scheduler.fitness import AllocationPattern
    from lte_ga_scheduler.ga import GaResult

__all__ = ["CacheEntry", "MappingCache", "cache_lookup", "cache_update"]


@dataclass(frozen=True)
class CacheEntry:
    """Last optimized pattern of a cluster."""

    pattern: AllocationPattern
    fitness: float
    """Combined fitness of `pattern` when it was stored."""
    tti: int


class MappingCache:
    """`K` slots, each empty or holding a `CacheEntry`."""

    def __init__(self, num_clusters: int) -> None:
        if num_clusters < 1:
            raise InvalidInputError(f"cache needs at least one slot, got {num_clusters}")
        self._entries: list[CacheEntry | None] = [None] * num_clusters

    @property
    def num_clusters(self) -> int:
        """`K`."""
        return len(self._entries)

    def __len__(self) -> int:
        """Populated slots."""
        return sum(entry is not None for entry in self._entries)

    def _check(self, cluster: int) -> None:
        if not 0 <= cluster < self.num_clusters:
            raise InvalidInputError(f"cluster must be in [0, {self.num_clusters}), got {cluster}")

    def lookup(self, cluster: int) -> CacheEntry | None:
        """Entry of `cluster`, `None` when never populated."""
        self._check(cluster)
        return self._entries[cluster]

    def update(self, cluster: int, result: GaResult, tti: int) -> None:
        """Replace the entry of `cluster` with the GA's best pattern."""
        self._check(cluster)
        self._entries[cluster] = CacheEntry(
            pattern=result.best_pattern, fitness=result.best_fitness.combined, tti=tti
        )

    def remap(self, old_centroids: ArrayLike, new_centroids: ArrayLike) -> None:
        """Move entries to the new clusters after a refit.

        Old and new clusters are matched one to one, closest centroid pair
        first. New clusters left without a match start empty.
        """
        old = np.asarray(old_centroids, dtype=np.float64)
        new = np.asarray(new_centroids, dtype=np.float64)
        distances = ((old[:, np.newaxis, :] - new[np.newaxis, :, :]) ** 2).sum(axis=2)
        entries: list[CacheEntry | None] = [None] * new.shape[0]
        used_old: set[int] = set()
        used_new: set[int] = set()
        # stable sort over the flattened pairs: ties go to the lower (old, new) index
        for flat in np.argsort(distances, axis=None, kind="stable"):
            i, j = divmod(int(flat), new.shape[0])
            if i in used_old or j in used_new:
                continue
            used_old.add(i)
            used_new.add(j)
            if i < len(self._entries):
                entries[j] = self._entries[i]
        self._entries = entries


def cache_lookup(cache: MappingCache, cluster: int) -> CacheEntry | None:
    """See `MappingCache.lookup()`."""
    return cache.lookup(cluster)


def cache_update(cache: MappingCache, cluster: int, result: GaResult, tti: int) -> MappingCache:
    """See `MappingCache.update()`, returns `cache`."""
    cache.update(cluster, result, tti)
    return cache
