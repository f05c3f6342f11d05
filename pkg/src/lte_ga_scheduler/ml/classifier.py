"""Training matrix and the one-vs-rest linear max-margin classifier.

Incoming demand vectors are mapped to the cluster of past demand they
resemble; that cluster index keys the mapping cache.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from lte_ga_scheduler.exceptions import DimensionError, InsufficientDataError, InvalidInputError
from lte_ga_scheduler.lte.traffic import DemandVector
from lte_ga_scheduler.utils import make_rng

from .database import DemandDatabase

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from lte_ga_scheduler.utils import SeedLike

    from .kmeans import ClusterModel

__all__ = [
    "ClassifierModel",
    "TrainingMatrix",
    "build_training_matrix",
    "classify",
    "train_classifier",
]


@dataclass(frozen=True, eq=False)
class TrainingMatrix:
    """Labeled feature rows, one per database row."""

    features: NDArray[np.float64]
    labels: NDArray[np.int64]
    num_clusters: int

    def __post_init__(self) -> None:
        if self.features.ndim != 2 or self.features.shape[0] != self.labels.shape[0]:
            raise DimensionError("one label per feature row is required")

    def __len__(self) -> int:
        return int(self.labels.shape[0])


def build_training_matrix(db: DemandDatabase | ArrayLike, model: ClusterModel) -> TrainingMatrix:
    """Label every row of `db` with its nearest centroid in `model`."""
    rows = db.snapshot() if isinstance(db, DemandDatabase) else np.asarray(db, dtype=np.float64)
    rows = np.atleast_2d(rows)
    return TrainingMatrix(
        features=rows, labels=model.predict(rows), num_clusters=model.num_clusters
    )


@dataclass(frozen=True, eq=False)
class ClassifierModel:
    """`K` linear separators over standardized features."""

    weights: NDArray[np.float64]
    """`K x d`."""
    bias: NDArray[np.float64]
    mean: NDArray[np.float64]
    """Per feature mean of the training rows."""
    scale: NDArray[np.float64]
    """Per feature standard deviation of the training rows, 1 where constant."""

    @property
    def num_classes(self) -> int:
        """`K`."""
        return int(self.weights.shape[0])

    @property
    def num_features(self) -> int:
        """`d`."""
        return int(self.weights.shape[1])

    def scores(self, rows: ArrayLike) -> NDArray[np.float64]:
        """One-vs-rest decision values, shape `rows x K`."""
        points = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if points.shape[1] != self.num_features:
            raise DimensionError(
                f"model expects {self.num_features} features, got {points.shape[1]}"
            )
        return ((points - self.mean) / self.scale) @ self.weights.T + self.bias

    def predict(self, rows: ArrayLike) -> NDArray[np.int64]:
        """Highest scoring class of each row, the lowest index on ties."""
        return np.argmax(self.scores(rows), axis=1)

    @classmethod
    def zeros(cls, num_classes: int, num_features: int) -> ClassifierModel:
        """Untrained model, every score is zero."""
        return cls(
            weights=np.zeros((num_classes, num_features)),
            bias=np.zeros(num_classes),
            mean=np.zeros(num_features),
            scale=np.ones(num_features),
        )


def train_classifier(
    training: TrainingMatrix,
    epochs: int = 100,
    learning_rate: float = 0.1,
    regularization: float = 1e-3,
    seed: SeedLike = 0,
    batch_size: int = 32,
) -> ClassifierModel:
    """Fit one hinge-loss separator per cluster.

    Minibatch subgradient descent on the L2 regularized hinge loss, the
    rows being reshuffled every epoch. Features are standardized first,
    mean and scale are kept in the model.

    Raises:
        InsufficientDataError: If `training` has no rows.
    """
    if len(training) == 0:
        raise InsufficientDataError("training matrix is empty")
    if epochs < 1 or batch_size < 1 or learning_rate <= 0 or regularization < 0:
        raise InvalidInputError("epochs, batch size and learning rate must be positive")
    rows, labels = training.features, training.labels
    mean = rows.mean(axis=0)
    scale = rows.std(axis=0)
    scale[scale == 0] = 1.0
    standardized = (rows - mean) / scale
    targets = np.where(labels[:, np.newaxis] == np.arange(training.num_clusters), 1.0, -1.0)
    weights = np.zeros((training.num_clusters, rows.shape[1]))
    bias = np.zeros(training.num_clusters)
    rng = make_rng(seed)
    for _ in range(epochs):
        order = rng.permutation(len(training))
        for start in range(0, order.size, batch_size):
            batch = order[start : start + batch_size]
            x, y = standardized[batch], targets[batch]
            margins = y * (x @ weights.T + bias)
            # subgradient of the hinge term is -y*x where the margin is violated
            violated = np.where(margins < 1.0, y, 0.0)
            weights -= learning_rate * (regularization * weights - violated.T @ x / batch.size)
            bias += learning_rate * violated.mean(axis=0)
    for array in (weights, bias, mean, scale):
        array.setflags(write=False)
    return ClassifierModel(weights=weights, bias=bias, mean=mean, scale=scale)


def classify(model: ClassifierModel, demand: DemandVector | ArrayLike) -> int:
    """Cluster index of one demand vector.

    Raises:
        DimensionError: If the feature width differs from the model's.
    """
    row = demand.features() if isinstance(demand, DemandVector) else np.asarray(demand)
    return int(model.predict(row)[0])
