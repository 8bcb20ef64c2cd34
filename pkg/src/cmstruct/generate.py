"""Seeded synthetic concept-map generators for the three structures.

Each generator builds an undirected skeleton by construction rules, then
assigns every edge a uniformly random direction (the degree features are
direction-blind, so direction carries no label signal). All randomness
comes from one PCG64 stream per map, so a (params, seed) pair is fully
reproducible.

Shapes at zero noise:
  spoke    h hub nodes linked in a hub chain, every other node a leaf
           attached to exactly one hub, leaves never interconnected
  chain    a simple path; with branch_prob > 0, spine nodes may carry one
           side branch of length 1 or 2
  network  a random recursive spanning tree whose degree-1 nodes are then
           cross-linked until every node has degree >= 2 and at least 25%
           of nodes have degree >= 3

``extra_edge_prob`` adds random cross edges to any kind, hybridizing the
classes the way hand-drawn maps mix characteristics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .errors import InvalidParams, MalformedInput
from .features import FeatureVector
from .graph import ConceptMap, Edge, Node
from .labels import LABELS, StructureLabel
from .rng import derive_seed, make_rng

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1

# Default knobs for the benchmark corpus; see scripts/noise_sweep.py for
# how the noise level was picked.
DEFAULT_SIZE_RANGE = (8, 40)
DEFAULT_HUBS = 2
DEFAULT_NOISE = 0.35


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for one structure class.

    ``hubs`` applies to spoke maps only; ``branch_prob`` to chains only;
    ``extra_edge_prob`` is the shared cross-edge noise knob.
    """

    kind: StructureLabel
    size_range: tuple[int, int] = DEFAULT_SIZE_RANGE
    hubs: int = 1
    branch_prob: float = 0.0
    extra_edge_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.size_range
        if lo < 3 or hi < lo:
            raise InvalidParams(f"size_range {self.size_range} must satisfy 3 <= min <= max")
        if self.hubs < 1:
            raise InvalidParams(f"hubs must be >= 1, got {self.hubs}")
        if not 0.0 <= self.branch_prob <= 1.0:
            raise InvalidParams(f"branch_prob {self.branch_prob} outside [0, 1]")
        if not 0.0 <= self.extra_edge_prob <= 1.0:
            raise InvalidParams(f"extra_edge_prob {self.extra_edge_prob} outside [0, 1]")
        if self.kind is StructureLabel.SPOKE and lo < 3 * self.hubs:
            raise InvalidParams(
                f"spoke with {self.hubs} hubs needs at least {3 * self.hubs} nodes, "
                f"size_range min is {lo}"
            )
        if self.kind is StructureLabel.NETWORK and lo < 4:
            raise InvalidParams("network maps need at least 4 nodes")


@dataclass(frozen=True)
class Corpus:
    entries: tuple[tuple[ConceptMap, StructureLabel], ...]
    manifest: dict


def _pair_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _add_cross_edges(rng, n, edges, pairs, prob):
    # One Bernoulli trial per node; failed candidates (self/duplicate) are
    # skipped rather than retried, keeping the draw count bounded.
    for _ in range(n):
        if rng.random() >= prob:
            continue
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v or _pair_key(u, v) in pairs:
            continue
        pairs.add(_pair_key(u, v))
        edges.append((u, v))


def _build_spoke(rng, n, params):
    h = params.hubs
    if n < 3 * h:
        raise InvalidParams(f"spoke with {h} hubs needs at least {3 * h} nodes, got {n}")
    edges: list[tuple[int, int]] = []
    pairs: set[tuple[int, int]] = set()
    # hubs are indices 0..h-1, linked pairwise along a hub chain
    for i in range(1, h):
        edges.append((i - 1, i))
        pairs.add(_pair_key(i - 1, i))
    # every hub gets two guaranteed leaves, the rest are assigned at random
    for j, leaf in enumerate(range(h, n)):
        hub = j // 2 if j < 2 * h else int(rng.integers(0, h))
        edges.append((hub, leaf))
        pairs.add(_pair_key(hub, leaf))
    _add_cross_edges(rng, n, edges, pairs, params.extra_edge_prob)
    return edges


def _build_chain(rng, n, params):
    edges: list[tuple[int, int]] = [(0, 1)]
    pairs: set[tuple[int, int]] = {(0, 1)}
    spine_end = 1
    alloc = 2
    may_branch = True  # at most one side branch per spine node
    while alloc < n:
        if may_branch and rng.random() < params.branch_prob:
            length = 1 if n - alloc == 1 else int(rng.integers(1, 3))
            b1 = alloc
            edges.append((spine_end, b1))
            pairs.add(_pair_key(spine_end, b1))
            alloc += 1
            if length == 2:
                edges.append((b1, alloc))
                pairs.add(_pair_key(b1, alloc))
                alloc += 1
            may_branch = False
        else:
            edges.append((spine_end, alloc))
            pairs.add(_pair_key(spine_end, alloc))
            spine_end = alloc
            alloc += 1
            may_branch = True
    _add_cross_edges(rng, n, edges, pairs, params.extra_edge_prob)
    return edges


def _build_network(rng, n, params):
    edges: list[tuple[int, int]] = []
    pairs: set[tuple[int, int]] = set()
    degree = [0] * n

    def link(u, v):
        pairs.add(_pair_key(u, v))
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1

    # random recursive spanning tree
    for i in range(1, n):
        link(int(rng.integers(0, i)), i)

    # cross-link tree leaves pairwise so every node reaches degree >= 2
    leaves = [v for v in range(n) if degree[v] == 1]
    order = [leaves[i] for i in rng.permutation(len(leaves))]
    for a, b in zip(order[0::2], order[1::2]):
        if _pair_key(a, b) not in pairs:
            link(a, b)
    for v in range(n):
        if degree[v] >= 2:
            continue
        for _ in range(10 * n):
            u = int(rng.integers(0, n))
            if u != v and _pair_key(u, v) not in pairs:
                link(u, v)
                break

    # densify until at least a quarter of the nodes sit on multiple routes
    target = -(-n // 4)  # ceil(n / 4)
    attempts = 0
    while sum(1 for d in degree if d >= 3) < target:
        attempts += 1
        if attempts > 100 * n:
            raise InvalidParams(f"cannot densify network of size {n}")
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v or _pair_key(u, v) in pairs:
            continue
        link(u, v)

    _add_cross_edges(rng, n, edges, pairs, params.extra_edge_prob)
    return edges


_BUILDERS = {
    StructureLabel.SPOKE: _build_spoke,
    StructureLabel.CHAIN: _build_chain,
    StructureLabel.NETWORK: _build_network,
}


def generate_map(
    params: GeneratorParams, map_id: str | None = None
) -> tuple[ConceptMap, StructureLabel]:
    """Generate one labeled map; deterministic for a given params.seed."""
    rng = make_rng(params.seed)
    lo, hi = params.size_range
    n = int(rng.integers(lo, hi + 1))
    edges = _BUILDERS[params.kind](rng, n, params)
    flips = rng.integers(0, 2, size=len(edges))
    directed = [(v, u) if flip else (u, v) for (u, v), flip in zip(edges, flips)]
    if map_id is None:
        map_id = f"{params.kind.wire_name}-{params.seed:016x}"
    cm = ConceptMap(
        map_id=map_id,
        nodes=tuple(Node(f"n{i}") for i in range(n)),
        edges=tuple(Edge(f"n{u}", f"n{v}") for u, v in directed),
    )
    return cm, params.kind


def default_params(noise: float = DEFAULT_NOISE) -> dict[StructureLabel, GeneratorParams]:
    """Per-class generator defaults; ``noise`` scales all hybridization knobs."""
    if not 0.0 <= noise <= 1.0:
        raise InvalidParams(f"noise {noise} outside [0, 1]")
    return {
        StructureLabel.CHAIN: GeneratorParams(
            kind=StructureLabel.CHAIN,
            branch_prob=min(1.0, 2.0 * noise),
            extra_edge_prob=noise,
        ),
        StructureLabel.NETWORK: GeneratorParams(
            kind=StructureLabel.NETWORK,
            extra_edge_prob=noise,
        ),
        StructureLabel.SPOKE: GeneratorParams(
            kind=StructureLabel.SPOKE,
            hubs=DEFAULT_HUBS,
            extra_edge_prob=noise,
        ),
    }


def generate_corpus(
    per_class: int,
    params_by_class: Mapping[StructureLabel, GeneratorParams] | None = None,
    master_seed: int = 0,
) -> Corpus:
    """Generate ``per_class`` maps per label, seeds derived from the master seed.

    Entry order is (label, index); per-map seeds are
    derive_seed(master_seed, label, index), so the corpus regenerates
    bit-exactly from its manifest.
    """
    if per_class < 1:
        raise InvalidParams(f"per_class must be >= 1, got {per_class}")
    if params_by_class is None:
        params_by_class = default_params()
    for label in LABELS:
        if label not in params_by_class:
            raise InvalidParams(f"params_by_class is missing {label.wire_name}")
        if params_by_class[label].kind is not label:
            raise InvalidParams(f"params for {label.wire_name} have kind "
                                f"{params_by_class[label].kind.wire_name}")

    entries = []
    for label in LABELS:
        base = params_by_class[label]
        for i in range(per_class):
            seed_i = derive_seed(master_seed, label.wire_name, i)
            cm, _ = generate_map(replace(base, seed=seed_i), map_id=f"{label.wire_name}-{i:04d}")
            entries.append((cm, label))

    manifest = {
        "format_version": MANIFEST_VERSION,
        "master_seed": int(master_seed),
        "per_class": int(per_class),
        "params_by_class": {
            label.wire_name: _params_doc(params_by_class[label]) for label in LABELS
        },
    }
    return Corpus(entries=tuple(entries), manifest=manifest)


def _params_doc(p: GeneratorParams) -> dict:
    return {
        "kind": p.kind.wire_name,
        "size_range": [p.size_range[0], p.size_range[1]],
        "hubs": p.hubs,
        "branch_prob": p.branch_prob,
        "extra_edge_prob": p.extra_edge_prob,
    }


def _params_from_doc(doc: dict) -> GeneratorParams:
    try:
        return GeneratorParams(
            kind=StructureLabel.from_name(doc["kind"]),
            size_range=(int(doc["size_range"][0]), int(doc["size_range"][1])),
            hubs=int(doc["hubs"]),
            branch_prob=float(doc["branch_prob"]),
            extra_edge_prob=float(doc["extra_edge_prob"]),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedInput(f"bad generator params in manifest: {exc}") from None


def manifest_to_bytes(manifest: dict) -> bytes:
    return (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode("utf-8")


def corpus_from_manifest(data: bytes) -> Corpus:
    """Regenerate a corpus bit-exactly from its manifest bytes."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"invalid manifest: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format_version") != MANIFEST_VERSION:
        raise MalformedInput("manifest missing or unsupported format_version")
    try:
        params = {
            StructureLabel.from_name(name): _params_from_doc(p)
            for name, p in doc["params_by_class"].items()
        }
        return generate_corpus(int(doc["per_class"]), params, int(doc["master_seed"]))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedInput(f"bad manifest: {exc}") from None


def rule_label(fv: FeatureVector) -> StructureLabel:
    """Rule-based oracle: recovers generator labels on zero-noise corpora.

    A pure chain never exceeds degree 2; a spoke is dominated by degree-1
    leaves so its median degree is 1; generated networks keep every node at
    degree >= 2 with a quarter of nodes at >= 3.
    """
    if fv.max_degree <= 2:
        return StructureLabel.CHAIN
    if fv.q2_degree <= 1.5:
        return StructureLabel.SPOKE
    return StructureLabel.NETWORK
