"""Degree-statistics features for a validated concept map.

Nine features per map, all derived from the total-degree sequence:
node count N, edge count E, the ratio E/N, the mean degree (exactly
2 * E/N under the total-degree convention), the degree standard deviation,
the three quartiles, and the maximum degree.

The features CSV is the interchange format between pipeline stages. Reals
are rendered with ``repr`` (shortest round-trip form), so reading a CSV
back reproduces every float bit for bit.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EmptyInput, InsufficientData, MalformedInput, QOutOfRange
from .graph import ValidatedGraph, degree_sequence
from .labels import StructureLabel

FEATURE_NAMES: tuple[str, ...] = (
    "num_nodes",
    "num_edges",
    "edges_per_node_ratio",
    "mean_degree",
    "std_degree",
    "q1_degree",
    "q2_degree",
    "q3_degree",
    "max_degree",
)

CSV_HEADER: tuple[str, ...] = ("map_id",) + FEATURE_NAMES + ("label",)


@dataclass(frozen=True)
class FeatureVector:
    map_id: str
    num_nodes: int
    num_edges: int
    edges_per_node_ratio: float
    mean_degree: float
    std_degree: float
    q1_degree: float
    q2_degree: float
    q3_degree: float
    max_degree: int

    def as_array(self) -> np.ndarray:
        """Feature values in FEATURE_NAMES order, float64."""
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=np.float64)


def quantile(sorted_values: Sequence[float], q: float) -> float:
    """Linear-interpolation quantile between closest ranks.

    Position p = q * (n - 1); the result interpolates between the floor and
    ceiling ranks. Input must already be sorted ascending (not checked).
    """
    n = len(sorted_values)
    if n == 0:
        raise EmptyInput("quantile of an empty sequence")
    if not 0.0 <= q <= 1.0:
        raise QOutOfRange(f"q={q} outside [0, 1]")
    p = q * (n - 1)
    lo = int(math.floor(p))
    frac = p - lo
    if lo + 1 >= n:
        return float(sorted_values[lo])
    lo_v = float(sorted_values[lo])
    hi_v = float(sorted_values[lo + 1])
    return lo_v + frac * (hi_v - lo_v)


def std_dev(values: Sequence[float], ddof: int = 0) -> float:
    """sqrt( sum((v - mean)^2) / (n - ddof) ) with ddof in {0, 1}."""
    if ddof not in (0, 1):
        raise QOutOfRange(f"ddof must be 0 or 1, got {ddof}")
    n = len(values)
    if n == 0:
        raise EmptyInput("std_dev of an empty sequence")
    if n <= ddof:
        raise InsufficientData(f"need more than {ddof} values, got {n}")
    arr = np.asarray(values, dtype=np.float64)
    mean = arr.sum() / n
    return float(np.sqrt(((arr - mean) ** 2).sum() / (n - ddof)))


def extract_features(g: ValidatedGraph, ddof: int = 0) -> FeatureVector:
    """Compute the nine degree statistics for a validated graph.

    ``mean_degree`` is computed as 2 * (E/N) so the identity with the ratio
    holds exactly, not within tolerance; this equals the arithmetic mean of
    the total-degree sequence.
    """
    degrees = degree_sequence(g).degrees
    sorted_deg = sorted(degrees)
    ratio = g.edge_count / g.node_count
    return FeatureVector(
        map_id=g.map_id,
        num_nodes=g.node_count,
        num_edges=g.edge_count,
        edges_per_node_ratio=ratio,
        mean_degree=2.0 * ratio,
        std_degree=std_dev(degrees, ddof=ddof),
        q1_degree=quantile(sorted_deg, 0.25),
        q2_degree=quantile(sorted_deg, 0.50),
        q3_degree=quantile(sorted_deg, 0.75),
        max_degree=int(sorted_deg[-1]),
    )


def _fmt_real(x: float) -> str:
    # repr gives the shortest string that parses back to the same float
    return repr(float(x))


def features_to_csv(rows: Sequence[tuple[FeatureVector, StructureLabel | None]]) -> bytes:
    """Render (FeatureVector, optional label) rows as the features CSV."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for fv, label in rows:
        writer.writerow(
            [
                fv.map_id,
                str(fv.num_nodes),
                str(fv.num_edges),
                _fmt_real(fv.edges_per_node_ratio),
                _fmt_real(fv.mean_degree),
                _fmt_real(fv.std_degree),
                _fmt_real(fv.q1_degree),
                _fmt_real(fv.q2_degree),
                _fmt_real(fv.q3_degree),
                str(fv.max_degree),
                label.wire_name if label is not None else "",
            ]
        )
    return buf.getvalue().encode("utf-8")


def features_from_csv(data: bytes) -> list[tuple[FeatureVector, StructureLabel | None]]:
    """Parse a features CSV produced by :func:`features_to_csv`."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"features CSV is not UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedInput("features CSV is empty") from None
    if tuple(header) != CSV_HEADER:
        raise MalformedInput(f"unexpected features CSV header: {header}")
    rows: list[tuple[FeatureVector, StructureLabel | None]] = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(CSV_HEADER):
            raise MalformedInput(f"line {lineno}: expected {len(CSV_HEADER)} fields")
        try:
            fv = FeatureVector(
                map_id=rec[0],
                num_nodes=int(rec[1]),
                num_edges=int(rec[2]),
                edges_per_node_ratio=float(rec[3]),
                mean_degree=float(rec[4]),
                std_degree=float(rec[5]),
                q1_degree=float(rec[6]),
                q2_degree=float(rec[7]),
                q3_degree=float(rec[8]),
                max_degree=int(rec[9]),
            )
            label = StructureLabel.from_name(rec[10]) if rec[10] else None
        except ValueError as exc:
            raise MalformedInput(f"line {lineno}: {exc}") from None
        rows.append((fv, label))
    return rows


def write_features_csv(
    path: str | Path, rows: Sequence[tuple[FeatureVector, StructureLabel | None]]
) -> None:
    Path(path).write_bytes(features_to_csv(rows))


def read_features_csv(path: str | Path) -> list[tuple[FeatureVector, StructureLabel | None]]:
    return features_from_csv(Path(path).read_bytes())
