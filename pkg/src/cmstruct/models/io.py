"""Versioned JSON persistence for trained models.

The on-disk document is canonical (sorted keys, compact separators), so
save -> load -> save is byte-identical. Floats are rendered with repr and
therefore round-trip exactly; loaded models predict identically to the
originals.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import CorruptModel, UnsupportedVersion
from ..labels import CLASS_NAMES
from .base import MODEL_FORMAT_VERSION, MODEL_KINDS, ModelSpec, TrainedModel
from .tree import N_CLASSES


def save_model(model: TrainedModel) -> bytes:
    doc = {
        "format_version": model.version,
        "kind": model.spec.kind,
        "feature_names": list(model.feature_names),
        "classes": list(model.classes),
        "seed": int(model.spec.seed),
        "payload": model.payload,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False).encode(
        "utf-8"
    )


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise CorruptModel(message)


def _check_tree_nodes(nodes, d: int) -> None:
    _check(isinstance(nodes, list) and nodes, "tree payload must be a non-empty node list")
    size = len(nodes)
    for nd in nodes:
        _check(isinstance(nd, dict), "tree nodes must be objects")
        for key in ("feature_index", "threshold", "left", "right", "class_counts"):
            _check(key in nd, f"tree node missing {key!r}")
        counts = nd["class_counts"]
        _check(
            isinstance(counts, list)
            and len(counts) == N_CLASSES
            and all(isinstance(c, int) and c >= 0 for c in counts),
            "class_counts must be 3 non-negative integers",
        )
        if nd["feature_index"] == -1:
            _check(nd["left"] == -1 and nd["right"] == -1, "leaf children must be -1")
            _check(sum(counts) >= 1, "leaf class_counts must sum to >= 1")
        else:
            _check(0 <= nd["feature_index"] < d, "feature_index out of range")
            thr = nd["threshold"]
            _check(
                isinstance(thr, (int, float)) and np.isfinite(thr),
                "internal threshold must be finite",
            )
            _check(0 <= nd["left"] < size and 0 <= nd["right"] < size, "child index out of range")


def load_model(data: bytes) -> TrainedModel:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptModel(f"model bytes are not valid JSON: {exc}") from None
    _check(isinstance(doc, dict), "model document must be an object")
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise UnsupportedVersion(f"unsupported model format_version {version!r}")
    kind = doc.get("kind")
    _check(kind in MODEL_KINDS, f"unknown model kind {kind!r}")
    names = doc.get("feature_names")
    _check(
        isinstance(names, list) and names and all(isinstance(n, str) for n in names),
        "feature_names must be a list of strings",
    )
    classes = doc.get("classes")
    _check(classes == list(CLASS_NAMES), f"classes must be {list(CLASS_NAMES)}")
    seed = doc.get("seed")
    _check(isinstance(seed, int) and seed >= 0, "seed must be a non-negative integer")
    payload = doc.get("payload")
    _check(isinstance(payload, dict), "payload must be an object")

    d = len(names)
    spec_kwargs = {"kind": kind, "seed": seed}
    if kind == "decision_tree":
        _check_tree_nodes(payload.get("nodes"), d)
    elif kind == "random_forest":
        trees = payload.get("trees")
        _check(isinstance(trees, list) and trees, "forest payload must hold a tree list")
        for nodes in trees:
            _check_tree_nodes(nodes, d)
        spec_kwargs["n_trees"] = len(trees)
    elif kind == "knn":
        k = payload.get("k")
        _check(isinstance(k, int) and k >= 1, "knn payload k must be a positive integer")
        rows = payload.get("X")
        labels = payload.get("y")
        _check(
            isinstance(rows, list)
            and rows
            and all(isinstance(r, list) and len(r) == d for r in rows),
            "knn payload X must be an (n, d) nested list",
        )
        _check(
            isinstance(labels, list)
            and len(labels) == len(rows)
            and all(isinstance(v, int) and 0 <= v < N_CLASSES for v in labels),
            "knn payload y must hold one class index per row",
        )
        spec_kwargs["k"] = k
    elif kind == "logistic_regression":
        weights = payload.get("weights")
        bias = payload.get("bias")
        _check(
            isinstance(weights, list)
            and len(weights) == N_CLASSES
            and all(isinstance(r, list) and len(r) == d for r in weights),
            "logreg weights must be a (3, d) nested list",
        )
        _check(
            isinstance(bias, list) and len(bias) == N_CLASSES,
            "logreg bias must have 3 entries",
        )

    try:
        spec = ModelSpec(**spec_kwargs)
    except Exception as exc:  # InvalidParams on bad hyperparameters
        raise CorruptModel(f"invalid persisted spec: {exc}") from None
    return TrainedModel(
        spec=spec,
        feature_names=tuple(names),
        classes=tuple(classes),
        payload=payload,
        version=version,
    )
