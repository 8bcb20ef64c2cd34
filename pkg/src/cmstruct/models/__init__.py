"""From-scratch multiclass classifiers behind one train/predict contract.

Four kinds share the surface: decision_tree, random_forest, knn and
logistic_regression. ``fit`` consumes an (n, d) feature matrix plus integer
labels and returns an immutable TrainedModel; ``predict`` /
``predict_scores`` accept a FeatureVector or a plain d-vector; the batch
variants take a matrix. Everything is deterministic per spec seed.
"""

from __future__ import annotations

import numpy as np

from ..errors import CorruptModel, DegenerateInput
from ..features import FEATURE_NAMES
from ..labels import StructureLabel
from .base import MODEL_KINDS, ModelSpec, TrainedModel, as_matrix, as_row, default_classes
from .forest import fit_forest_trees, forest_scores_matrix, forest_scores_row
from .io import load_model, save_model
from .knn import knn_predict_row, knn_scores_row
from .logreg import logreg_scores_matrix, train_softmax
from .tree import best_split, gini, grow_tree, tree_scores_matrix

__all__ = [
    "MODEL_KINDS",
    "ModelSpec",
    "TrainedModel",
    "best_split",
    "fit",
    "gini",
    "load_model",
    "predict",
    "predict_matrix",
    "predict_scores",
    "save_model",
    "scores_matrix",
]


def fit(spec: ModelSpec, X, y, feature_names=None) -> TrainedModel:
    """Train ``spec`` on an (n, d) matrix and integer labels (0..2).

    Raises DegenerateInput for n < 2, or for single-class data with
    logistic regression (trees and knn accept a single class).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DegenerateInput(f"X {X.shape} and y {y.shape} do not align")
    n, d = X.shape
    if n < 2:
        raise DegenerateInput(f"need at least 2 training rows, got {n}")
    if y.min() < 0 or y.max() > 2:
        raise DegenerateInput("labels must be class indices in 0..2")
    names = tuple(feature_names) if feature_names is not None else FEATURE_NAMES
    if len(names) != d:
        raise DegenerateInput(f"{d}-column matrix needs {d} feature names, got {len(names)}")

    if spec.kind == "decision_tree":
        nodes = grow_tree(
            X,
            y,
            max_depth=spec.max_depth,
            min_samples_split=spec.min_samples_split,
            min_samples_leaf=spec.min_samples_leaf,
        )
        payload = {"nodes": nodes}
    elif spec.kind == "random_forest":
        payload = {"trees": fit_forest_trees(spec, X, y)}
    elif spec.kind == "knn":
        payload = {
            "k": spec.k,
            "X": [[float(v) for v in row] for row in X],
            "y": [int(v) for v in y],
        }
    elif spec.kind == "logistic_regression":
        if np.unique(y).size < 2:
            raise DegenerateInput("logistic regression needs at least 2 classes present")
        W, b, info = train_softmax(X, y, l2=spec.l2, tol=spec.tol, max_iter=spec.max_iter)
        payload = {
            "weights": [[float(v) for v in row] for row in W],
            "bias": [float(v) for v in b],
            "converged": info["converged"],
            "iterations": info["iterations"],
        }
    else:  # unreachable: ModelSpec validates kind
        raise DegenerateInput(f"unknown kind {spec.kind!r}")

    return TrainedModel(
        spec=spec, feature_names=names, classes=default_classes(), payload=payload
    )


def scores_matrix(model: TrainedModel, X) -> np.ndarray:
    """(n, 3) score matrix, rows summing to 1."""
    M = as_matrix(model, X)
    kind = model.spec.kind
    if kind == "decision_tree":
        return tree_scores_matrix(model.payload["nodes"], M)
    if kind == "random_forest":
        return forest_scores_matrix(model.payload["trees"], M)
    if kind == "knn":
        train_X = np.asarray(model.payload["X"], dtype=np.float64)
        train_y = np.asarray(model.payload["y"], dtype=np.int64)
        k = model.payload["k"]
        return np.stack([knn_scores_row(train_X, train_y, row, k) for row in M])
    if kind == "logistic_regression":
        W = np.asarray(model.payload["weights"], dtype=np.float64)
        b = np.asarray(model.payload["bias"], dtype=np.float64)
        return logreg_scores_matrix(W, b, M)
    raise CorruptModel(f"unknown kind {kind!r}")


def predict_scores(model: TrainedModel, x) -> np.ndarray:
    """Per-class scores for one input, non-negative and summing to 1."""
    row = as_row(model, x)
    if model.spec.kind == "random_forest":
        # fsum aggregation: invariant to tree evaluation order
        return forest_scores_row(model.payload["trees"], row)
    return scores_matrix(model, row[None, :])[0]


def predict(model: TrainedModel, x) -> StructureLabel:
    """Argmax of predict_scores; ties resolved per model convention.

    knn breaks vote ties by the smaller mean neighbor distance, then class
    encoding; all other kinds take the lowest class encoding.
    """
    row = as_row(model, x)
    if model.spec.kind == "knn":
        train_X = np.asarray(model.payload["X"], dtype=np.float64)
        train_y = np.asarray(model.payload["y"], dtype=np.int64)
        return StructureLabel(knn_predict_row(train_X, train_y, row, model.payload["k"]))
    scores = predict_scores(model, row)
    return StructureLabel(int(np.argmax(scores)))


def predict_matrix(model: TrainedModel, X) -> np.ndarray:
    """Predicted class indices for every row of X."""
    M = as_matrix(model, X)
    if model.spec.kind == "knn":
        train_X = np.asarray(model.payload["X"], dtype=np.float64)
        train_y = np.asarray(model.payload["y"], dtype=np.int64)
        k = model.payload["k"]
        return np.array(
            [knn_predict_row(train_X, train_y, row, k) for row in M], dtype=np.int64
        )
    return np.argmax(scores_matrix(model, M), axis=1).astype(np.int64)
