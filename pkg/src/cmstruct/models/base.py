"""Shared model types: spec (kind + hyperparameters) and trained payload."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import FeatureMismatch, InvalidParams
from ..features import FEATURE_NAMES, FeatureVector
from ..labels import CLASS_NAMES

MODEL_KINDS = ("decision_tree", "random_forest", "knn", "logistic_regression")

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelSpec:
    """Model kind, seed, and hyperparameters (defaults mirror the common
    toolkit defaults: unbounded Gini tree, 100-tree forest with sqrt-feature
    subsampling, 5-NN on unscaled Euclidean distance, L2 softmax regression).
    """

    kind: str
    seed: int = 0
    # decision tree / forest trees
    max_depth: int | None = None
    min_samples_split: int = 2
    min_samples_leaf: int = 1
    # random forest
    n_trees: int = 100
    max_features: int | None = None  # None -> floor(sqrt(n_features))
    # knn
    k: int = 5
    # logistic regression
    l2: float = 1.0
    tol: float = 1e-6
    max_iter: int = 10000

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise InvalidParams(f"unknown model kind {self.kind!r}")
        if self.max_depth is not None and self.max_depth < 1:
            raise InvalidParams("max_depth must be >= 1 or None")
        if self.min_samples_split < 2:
            raise InvalidParams("min_samples_split must be >= 2")
        if self.min_samples_leaf < 1:
            raise InvalidParams("min_samples_leaf must be >= 1")
        if self.n_trees < 1:
            raise InvalidParams("n_trees must be >= 1")
        if self.max_features is not None and self.max_features < 1:
            raise InvalidParams("max_features must be >= 1 or None")
        if self.k < 1:
            raise InvalidParams("k must be >= 1")
        if self.l2 < 0:
            raise InvalidParams("l2 must be >= 0")
        if self.tol <= 0:
            raise InvalidParams("tol must be > 0")
        if self.max_iter < 1:
            raise InvalidParams("max_iter must be >= 1")


@dataclass(frozen=True)
class TrainedModel:
    """Immutable fitted model; ``payload`` is kind-specific and JSON-ready."""

    spec: ModelSpec
    feature_names: tuple[str, ...]
    classes: tuple[str, ...]
    payload: dict
    version: int = MODEL_FORMAT_VERSION

    @property
    def n_features(self) -> int:
        return len(self.feature_names)


def as_row(model: TrainedModel, x) -> np.ndarray:
    """Coerce a FeatureVector or a plain sequence to a float64 feature row."""
    if isinstance(x, FeatureVector):
        missing = [n for n in model.feature_names if n not in FEATURE_NAMES]
        if missing:
            raise FeatureMismatch(f"model feature names {missing} not present on FeatureVector")
        return np.array([getattr(x, n) for n in model.feature_names], dtype=np.float64)
    row = np.asarray(x, dtype=np.float64)
    if row.shape != (model.n_features,):
        raise FeatureMismatch(
            f"expected {model.n_features} features, got shape {row.shape}"
        )
    return row


def as_matrix(model: TrainedModel, X) -> np.ndarray:
    M = np.asarray(X, dtype=np.float64)
    if M.ndim != 2 or M.shape[1] != model.n_features:
        raise FeatureMismatch(
            f"expected (n, {model.n_features}) feature matrix, got shape {M.shape}"
        )
    return M


def default_classes() -> tuple[str, ...]:
    return CLASS_NAMES
