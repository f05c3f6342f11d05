"""Clustering, classification and cache configuration."""
from __future__ import annotations

from pydantic import BaseModel, Field

from .database import DEFAULT_CAPACITY
from .kmeans import DEFAULT_MAX_ITERS, DEFAULT_N_INIT


class MlConfig(BaseModel):
    """The `[ml]` section of the scenario config file."""

    class Config:
        allow_mutation = False
        extra = "forbid"

    num_clusters: int = Field(3, ge=1)
    """`K`, demand clusters and mapping cache slots."""
    recluster_period: int = Field(10, ge=1)
    """`P`, TTIs between refits once bootstrapped."""
    capacity: int = Field(DEFAULT_CAPACITY, ge=1)
    """Demand database rows kept."""
    bootstrap_rows_per_cluster: int = Field(5, ge=1)
    """Models are first fitted once the database holds `K` times this many rows."""
    max_iters: int = Field(DEFAULT_MAX_ITERS, ge=1)
    """Lloyd iterations per k-means restart."""
    n_init: int = Field(DEFAULT_N_INIT, ge=1)
    """k-means restarts."""
    epochs: int = Field(100, ge=1)
    """Classifier training epochs."""
    learning_rate: float = Field(0.1, gt=0)
    regularization: float = Field(1e-3, ge=0)
    batch_size: int = Field(32, ge=1)

    @property
    def bootstrap_rows(self) -> int:
        """Database rows needed before the first fit."""
        return self.num_clusters * self.bootstrap_rows_per_cluster
