"""State of the closed adaptation loop: database, models and cache."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from lte_ga_scheduler.log import simulation as sim_log
from lte_ga_scheduler.utils import derive_seed

from .cache import MappingCache
from .classifier import build_training_matrix, classify, train_classifier
from .database import DemandDatabase
from .kmeans import kmeans_fit

if TYPE_CHECKING:
    from lte_ga_scheduler.lte.traffic import DemandVector

    from .classifier import ClassifierModel
    from .config import MlConfig
    from .kmeans import ClusterModel

__all__ = ["AdaptationLoop", "ModelBundle"]


@dataclass(frozen=True)
class ModelBundle:
    """Cluster and classifier models fitted on the same snapshot."""

    clusters: ClusterModel
    classifier: ClassifierModel
    fitted_at: int
    """TTI at the end of which the models were fitted."""


class AdaptationLoop:
    """Owns the demand database, the current models and the mapping cache.

    Models are replaced as a whole by `refit()`, readers only ever see a
    complete `ModelBundle` or none.
    """

    def __init__(self, config: MlConfig, seed: int) -> None:
        self.config = config
        self.seed = seed
        self.database = DemandDatabase(capacity=config.capacity)
        self.cache = MappingCache(config.num_clusters)
        self.models: ModelBundle | None = None

    @property
    def trained(self) -> bool:
        """Whether `classify()` yields clusters yet."""
        return self.models is not None

    def observe(self, demand: DemandVector) -> None:
        """Record the demand of a TTI."""
        self.database.append(demand)

    def classify(self, demand: DemandVector) -> int | None:
        """Cluster of `demand`, `None` while bootstrapping."""
        if self.models is None:
            return None
        return classify(self.models.classifier, demand)

    def refit_due(self, tti: int) -> bool:
        """First fit as soon as enough rows exist, then every `P` TTIs."""
        if len(self.database) < self.config.bootstrap_rows:
            return False
        return self.models is None or (tti + 1) % self.config.recluster_period == 0

    def refit(self, tti: int) -> ModelBundle:
        """Recluster the database, retrain the classifier and remap the cache."""
        config = self.config
        rows = self.database.snapshot()
        clusters = kmeans_fit(
            rows,
            config.num_clusters,
            seed=derive_seed(self.seed, tti, 0),
            max_iters=config.max_iters,
            n_init=config.n_init,
        )
        classifier = train_classifier(
            build_training_matrix(rows, clusters),
            epochs=config.epochs,
            learning_rate=config.learning_rate,
            regularization=config.regularization,
            seed=derive_seed(self.seed, tti, 1),
            batch_size=config.batch_size,
        )
        if self.models is not None:
            self.cache.remap(self.models.clusters.centroids, clusters.centroids)
        self.models = ModelBundle(clusters=clusters, classifier=classifier, fitted_at=tti)
        sim_log.log_refit(
            tti=tti,
            rows=rows.shape[0],
            inertia=clusters.inertia,
            sizes=clusters.sizes.tolist(),
            cached=len(self.cache),
        )
        return self.models

    def end_of_tti(self, tti: int) -> None:
        """Refit if due."""
        if self.refit_due(tti):
            self.refit(tti)
