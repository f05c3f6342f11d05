"""Demand clustering, classification, weight adaptation and the mapping cache."""
from .adapt import adapt_weights
from .cache import CacheEntry, MappingCache, cache_lookup, cache_update
from .classifier import (
    ClassifierModel,
    TrainingMatrix,
    build_training_matrix,
    classify,
    train_classifier,
)
from .config import MlConfig
from .database import DemandDatabase
from .kmeans import ClusterModel, kmeans_fit, nearest_centroid
from .loop import AdaptationLoop, ModelBundle

__all__ = [
    "AdaptationLoop",
    "CacheEntry",
    "ClassifierModel",
    "ClusterModel",
    "DemandDatabase",
    "MappingCache",
    "MlConfig",
    "ModelBundle",
    "TrainingMatrix",
    "adapt_weights",
    "build_training_matrix",
    "cache_lookup",
    "cache_update",
    "classify",
    "kmeans_fit",
    "nearest_centroid",
    "train_classifier",
]
