"""CART-style decision tree: Gini impurity, midpoint thresholds, grow to purity.

Split selection works on integer class counts. For a candidate boundary the
quantity sum(c_left^2)/n_left + sum(c_right^2)/n_right is computed as an
exact int64 ratio before the float division, so candidate scores are
correctly rounded and the argmax (with ties broken by lowest feature index,
then smallest threshold) is reproducible across platforms and agrees with
exact rational comparison at every realistic sample size.

Trees are stored as a flat node array. Internal nodes carry
(feature_index, threshold, left, right); leaves use -1 sentinels and a null
threshold. Every node keeps its class_counts. Rows with x <= threshold go
left.
"""

from __future__ import annotations

import numpy as np

from ..errors import EmptyNode

N_CLASSES = 3


def gini(class_counts) -> float:
    """Gini impurity 1 - sum((c/n)^2) for non-negative counts."""
    counts = np.asarray(class_counts, dtype=np.int64)
    n = int(counts.sum())
    if n <= 0:
        raise EmptyNode("impurity of an empty node")
    p = counts / n
    return float(1.0 - np.dot(p, p))


def best_split(X, y, feature_indices=None, min_samples_leaf: int = 1,
               allow_zero_improvement: bool = False):
    """Best (feature_index, threshold, weighted_child_impurity) or None.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values of each feature (clamped to the lower value if float rounding
    would reach the upper one). Returns None when no candidate strictly
    reduces the weighted child Gini below the parent impurity.

    ``allow_zero_improvement`` accepts the best zero-gain split instead of
    None; tree growth uses this on impure nodes so XOR-like patterns, where
    no single cut helps but two do, still separate (grow-to-purity).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = y.shape[0]
    if n < 2:
        return None
    tot = np.bincount(y, minlength=N_CLASSES).astype(np.int64)
    parent_score = float(np.dot(tot, tot)) / n  # sum(c^2) / n
    if feature_indices is None:
        feature_indices = range(X.shape[1])

    best = None  # (score, feature, threshold)
    for f in sorted(int(f) for f in feature_indices):
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        if xs[0] == xs[-1]:
            continue
        onehot = np.zeros((n, N_CLASSES), dtype=np.int64)
        onehot[np.arange(n), y[order]] = 1
        cum = np.cumsum(onehot, axis=0)
        boundaries = np.nonzero(xs[1:] > xs[:-1])[0] + 1  # candidate left sizes
        if min_samples_leaf > 1:
            keep = (boundaries >= min_samples_leaf) & (n - boundaries >= min_samples_leaf)
            boundaries = boundaries[keep]
        if boundaries.size == 0:
            continue
        cl = cum[boundaries - 1]
        cr = tot[None, :] - cl
        n_l = boundaries.astype(np.int64)
        n_r = n - n_l
        sl = np.einsum("bc,bc->b", cl, cl)
        sr = np.einsum("bc,bc->b", cr, cr)
        score = (sl * n_r + sr * n_l) / (n_l * n_r)
        j = int(np.argmax(score))  # first max -> smallest threshold
        s = float(score[j])
        if s < parent_score or (s == parent_score and not allow_zero_improvement):
            continue
        if best is None or s > best[0]:
            i = int(boundaries[j])
            a = float(xs[i - 1])
            b = float(xs[i])
            thr = (a + b) / 2.0
            if not (a <= thr < b):
                thr = a
            best = (s, f, thr)

    if best is None:
        return None
    s, f, thr = best
    return f, thr, 1.0 - s / n


def grow_tree(
    X,
    y,
    max_depth: int | None = None,
    min_samples_split: int = 2,
    min_samples_leaf: int = 1,
    rng: np.random.Generator | None = None,
    max_features: int | None = None,
) -> list[dict]:
    """Grow a tree until nodes are pure or unsplittable; returns the flat node array.

    When ``max_features`` is given, each split considers a random subset of
    features drawn from ``rng`` (consumed in preorder, so growth is
    deterministic per seed).
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n, d = X.shape
    nodes: list[dict] = []

    def build(idx: np.ndarray, depth: int) -> int:
        slot = len(nodes)
        counts = np.bincount(y[idx], minlength=N_CLASSES)
        node = {
            "feature_index": -1,
            "threshold": None,
            "left": -1,
            "right": -1,
            "class_counts": [int(c) for c in counts],
        }
        nodes.append(node)
        if (
            int((counts > 0).sum()) <= 1
            or idx.size < min_samples_split
            or (max_depth is not None and depth >= max_depth)
        ):
            return slot
        if max_features is not None and max_features < d:
            subset = sorted(int(f) for f in rng.choice(d, size=max_features, replace=False))
        else:
            subset = None
        found = best_split(
            X[idx], y[idx], subset, min_samples_leaf=min_samples_leaf,
            allow_zero_improvement=True,
        )
        if found is None:
            return slot
        f, thr, _ = found
        mask = X[idx, f] <= thr
        node["feature_index"] = f
        node["threshold"] = thr
        node["left"] = build(idx[mask], depth + 1)
        node["right"] = build(idx[~mask], depth + 1)
        return slot

    build(np.arange(n), 0)
    return nodes


def tree_arrays(nodes: list[dict]):
    """Columnar view of a flat node array for vectorized application."""
    feat = np.array([nd["feature_index"] for nd in nodes], dtype=np.int64)
    thr = np.array(
        [nd["threshold"] if nd["threshold"] is not None else 0.0 for nd in nodes],
        dtype=np.float64,
    )
    left = np.array([nd["left"] for nd in nodes], dtype=np.int64)
    right = np.array([nd["right"] for nd in nodes], dtype=np.int64)
    counts = np.array([nd["class_counts"] for nd in nodes], dtype=np.float64)
    return feat, thr, left, right, counts


def tree_apply(arrays, X: np.ndarray) -> np.ndarray:
    """Leaf index for every row of X."""
    feat, thr, left, right, _ = arrays
    pos = np.zeros(X.shape[0], dtype=np.int64)
    while True:
        internal = feat[pos] >= 0
        if not internal.any():
            return pos
        rows = np.nonzero(internal)[0]
        p = pos[rows]
        go_left = X[rows, feat[p]] <= thr[p]
        pos[rows] = np.where(go_left, left[p], right[p])


def leaf_distribution(counts_row: np.ndarray) -> np.ndarray:
    total = counts_row.sum()
    return counts_row / total


def tree_scores_matrix(nodes: list[dict], X: np.ndarray) -> np.ndarray:
    arrays = tree_arrays(nodes)
    leaf = tree_apply(arrays, X)
    counts = arrays[4][leaf]
    return counts / counts.sum(axis=1, keepdims=True)
