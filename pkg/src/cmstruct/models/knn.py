"""k-nearest-neighbors on unscaled Euclidean distance, uniform votes.

Neighbor ties at the k-th radius are broken by training index (stable
lexsort on distance, then index). Vote ties are broken by the smaller mean
neighbor distance among tied classes, then by class encoding.
"""

from __future__ import annotations

import numpy as np

from .tree import N_CLASSES


def knn_neighbors(train_X: np.ndarray, row: np.ndarray, k: int):
    """Indices of the k nearest training rows plus their distances."""
    d2 = ((train_X - row) ** 2).sum(axis=1)
    order = np.lexsort((np.arange(train_X.shape[0]), d2))
    top = order[: min(k, train_X.shape[0])]
    return top, np.sqrt(d2[top])


def knn_scores_row(train_X, train_y, row, k: int) -> np.ndarray:
    top, _ = knn_neighbors(train_X, row, k)
    counts = np.bincount(train_y[top], minlength=N_CLASSES)
    return counts / counts.sum()


def knn_predict_row(train_X, train_y, row, k: int) -> int:
    top, dist = knn_neighbors(train_X, row, k)
    counts = np.bincount(train_y[top], minlength=N_CLASSES)
    winners = np.nonzero(counts == counts.max())[0]
    if winners.size == 1:
        return int(winners[0])
    # tied vote: smallest mean neighbor distance, then class encoding
    means = []
    votes = train_y[top]
    for c in winners:
        means.append(float(dist[votes == c].mean()))
    best = min(range(winners.size), key=lambda i: (means[i], int(winners[i])))
    return int(winners[best])
