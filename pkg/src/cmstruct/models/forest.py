"""Random forest: bagged grow-to-purity trees with per-split feature subsets.

Per-tree seeds are pre-derived from the spec seed, so the fitted payload is
identical no matter how tree training is scheduled. Single-row score
aggregation uses math.fsum, which is order-independent, making predictions
invariant to tree evaluation order.
"""

from __future__ import annotations

import math

import numpy as np

from ..rng import derive_seed, make_rng
from .tree import N_CLASSES, grow_tree, tree_scores_matrix


def forest_feature_count(d: int, max_features: int | None) -> int:
    m = max_features if max_features is not None else int(math.floor(math.sqrt(d)))
    return max(1, min(m, d))


def fit_forest_trees(spec, X: np.ndarray, y: np.ndarray) -> list[list[dict]]:
    n, d = X.shape
    m = forest_feature_count(d, spec.max_features)
    trees = []
    for t in range(spec.n_trees):
        rng = make_rng(derive_seed(spec.seed, "tree", t))
        idx = rng.integers(0, n, size=n)  # bootstrap sample of size n
        trees.append(
            grow_tree(
                X[idx],
                y[idx],
                max_depth=spec.max_depth,
                min_samples_split=spec.min_samples_split,
                min_samples_leaf=spec.min_samples_leaf,
                rng=rng,
                max_features=m,
            )
        )
    return trees


def forest_scores_row(trees: list[list[dict]], row: np.ndarray) -> np.ndarray:
    """Mean of per-tree leaf distributions, summed with fsum (order-invariant)."""
    per_tree = [tree_scores_matrix(nodes, row[None, :])[0] for nodes in trees]
    sums = [math.fsum(dist[c] for dist in per_tree) for c in range(N_CLASSES)]
    scores = np.array(sums, dtype=np.float64) / len(trees)
    return scores / scores.sum()


def forest_scores_matrix(trees: list[list[dict]], X: np.ndarray) -> np.ndarray:
    acc = np.zeros((X.shape[0], N_CLASSES), dtype=np.float64)
    for nodes in trees:
        acc += tree_scores_matrix(nodes, X)
    acc /= len(trees)
    return acc / acc.sum(axis=1, keepdims=True)
