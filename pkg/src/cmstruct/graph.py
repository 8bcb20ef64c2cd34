"""Concept-map ingestion: parsing, validation and degree statistics.

A map arrives as JSON or CSV bytes, becomes a :class:`ConceptMap` (raw but
syntactically sound), and is then validated into a :class:`ValidatedGraph`
with dense node indices. Text labels on nodes and edges are carried through
for round-tripping but never influence any downstream statistic.

Admission rule: a validated graph has at least 3 nodes and 2 edges.
Connectivity is NOT required; disconnected maps are admitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import (
    DanglingEdge,
    DuplicateNodeId,
    MalformedInput,
    SelfLoop,
    TooSmall,
)

MAP_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class Node:
    node_id: str
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str | None = None


@dataclass(frozen=True)
class ConceptMap:
    """Parsed map. May still contain duplicate ordered edges (validate drops them)."""

    map_id: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class ValidatedGraph:
    """Directed graph over dense node indices, admitted for feature extraction.

    ``adjacency`` holds ordered (source_index, target_index) pairs, unique,
    in first-appearance order. ``warnings`` records one entry per duplicate
    ordered edge dropped during validation.
    """

    map_id: str
    node_count: int
    edge_count: int
    adjacency: tuple[tuple[int, int], ...]
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class DegreeSequence:
    """Total degree (in + out) per node, ordered by dense node index."""

    degrees: tuple[int, ...]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise MalformedInput(message)


def _parse_json(data: bytes, map_id: str | None) -> ConceptMap:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"invalid JSON map: {exc}") from None
    _require(isinstance(doc, dict), "top-level JSON value must be an object")
    raw_id = doc.get("id", map_id)
    _require(isinstance(raw_id, str) and raw_id != "", "map id missing or not a string")
    _require(isinstance(doc.get("nodes"), list), "'nodes' must be a list")
    _require(isinstance(doc.get("edges"), list), "'edges' must be a list")

    nodes: list[Node] = []
    seen: set[str] = set()
    for entry in doc["nodes"]:
        _require(isinstance(entry, dict), "node entries must be objects")
        nid = entry.get("id")
        _require(isinstance(nid, str) and nid != "", "node id missing or not a string")
        label = entry.get("label")
        _require(label is None or isinstance(label, str), "node label must be a string")
        if nid in seen:
            raise DuplicateNodeId(f"node id {nid!r} declared twice")
        seen.add(nid)
        nodes.append(Node(nid, label))

    edges: list[Edge] = []
    for entry in doc["edges"]:
        _require(isinstance(entry, dict), "edge entries must be objects")
        src, tgt = entry.get("source"), entry.get("target")
        _require(isinstance(src, str) and isinstance(tgt, str), "edge endpoints must be strings")
        label = entry.get("label")
        _require(label is None or isinstance(label, str), "edge label must be a string")
        if src not in seen:
            raise DanglingEdge(f"edge source {src!r} is not a declared node")
        if tgt not in seen:
            raise DanglingEdge(f"edge target {tgt!r} is not a declared node")
        if src == tgt:
            raise SelfLoop(f"edge {src!r}->{tgt!r} is a self-loop")
        edges.append(Edge(src, tgt, label))

    return ConceptMap(raw_id, tuple(nodes), tuple(edges))


def _parse_csv(data: bytes, map_id: str | None) -> ConceptMap:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"CSV map is not UTF-8: {exc}") from None

    order: list[str] = []
    seen: set[str] = set()
    edges: list[Edge] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise MalformedInput(f"line {lineno}: expected 'source,target', got {line!r}")
        src, tgt = parts
        if src == tgt:
            raise SelfLoop(f"line {lineno}: edge {src!r}->{tgt!r} is a self-loop")
        for nid in (src, tgt):
            if nid not in seen:
                seen.add(nid)
                order.append(nid)
        edges.append(Edge(src, tgt))

    nodes = tuple(Node(nid) for nid in order)
    return ConceptMap(map_id or "", nodes, tuple(edges))


def parse_map(data: bytes, fmt: str, map_id: str | None = None) -> ConceptMap:
    """Parse map bytes in the declared format.

    ``map_id`` is the fallback identity (e.g. a filename stem); CSV maps
    always use it, JSON maps use their own ``id`` field when present.
    CSV nodes are inferred from edge endpoints in first-appearance order.
    """
    if fmt == "json":
        return _parse_json(data, map_id)
    if fmt == "csv":
        return _parse_csv(data, map_id)
    raise MalformedInput(f"unknown map format {fmt!r}")


def serialize_map(cm: ConceptMap) -> bytes:
    """Render a ConceptMap as JSON map-format bytes (round-trips exactly)."""
    doc = {
        "id": cm.map_id,
        "nodes": [
            {"id": n.node_id} if n.label is None else {"id": n.node_id, "label": n.label}
            for n in cm.nodes
        ],
        "edges": [
            {"source": e.source, "target": e.target}
            if e.label is None
            else {"source": e.source, "target": e.target, "label": e.label}
            for e in cm.edges
        ],
    }
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def validate(cm: ConceptMap) -> ValidatedGraph:
    """Validate a parsed map and assign dense indices in declaration order.

    Duplicate ordered (source, target) edges are dropped, one warning per
    dropped occurrence; the reverse pair is a distinct edge and is kept.
    Raises TooSmall when fewer than 3 nodes or 2 edges remain.
    """
    index: dict[str, int] = {}
    for node in cm.nodes:
        if node.node_id in index:
            raise DuplicateNodeId(f"node id {node.node_id!r} declared twice")
        index[node.node_id] = len(index)

    adjacency: list[tuple[int, int]] = []
    seen_pairs: set[tuple[int, int]] = set()
    warnings: list[str] = []
    for edge in cm.edges:
        if edge.source not in index:
            raise DanglingEdge(f"edge source {edge.source!r} is not a declared node")
        if edge.target not in index:
            raise DanglingEdge(f"edge target {edge.target!r} is not a declared node")
        if edge.source == edge.target:
            raise SelfLoop(f"edge {edge.source!r}->{edge.target!r} is a self-loop")
        pair = (index[edge.source], index[edge.target])
        if pair in seen_pairs:
            warnings.append(f"duplicate edge {edge.source}->{edge.target} dropped")
            continue
        seen_pairs.add(pair)
        adjacency.append(pair)

    if len(index) < 3 or len(adjacency) < 2:
        raise TooSmall(
            f"map {cm.map_id!r} has {len(index)} nodes / {len(adjacency)} edges; "
            "need at least 3 nodes and 2 edges"
        )

    return ValidatedGraph(
        map_id=cm.map_id,
        node_count=len(index),
        edge_count=len(adjacency),
        adjacency=tuple(adjacency),
        warnings=tuple(warnings),
    )


def degree_sequence(g: ValidatedGraph) -> DegreeSequence:
    """Total degree (in + out) per node, ordered by dense node index."""
    degrees = [0] * g.node_count
    for src, tgt in g.adjacency:
        degrees[src] += 1
        degrees[tgt] += 1
    return DegreeSequence(tuple(degrees))


def scan_directory(path: str | Path) -> Iterator[tuple[Path, ConceptMap]]:
    """Yield (path, ConceptMap) for every *.json / *.csv map in a directory.

    Files are visited in lexicographic filename order; the filename stem is
    the fallback map id. A ``manifest.json`` written by the corpus generator
    is skipped.
    """
    root = Path(path)
    if not root.is_dir():
        raise MalformedInput(f"{root} is not a directory")
    for child in sorted(root.iterdir(), key=lambda p: p.name):
        if child.suffix not in (".json", ".csv") or not child.is_file():
            continue
        if child.name == "manifest.json":
            continue
        fmt = child.suffix.lstrip(".")
        yield child, parse_map(child.read_bytes(), fmt, map_id=child.stem)
