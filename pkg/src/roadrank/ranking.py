"""Competition ranking, strength values and the hub report.

Standard competition ("1224") ranking: tied scores share a rank, and the
next distinct score's rank skips by the size of the tie run. Strength is
the normalized score scaled by 1e6, the display-scale importance number.
Ties are detected on exact equality of the raw scores, never on rounded
display values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple, Sequence, TextIO

import numpy as np

from .analysis import degrees
from .errors import InvalidSelection, MalformedRow
from .ingest import RoadGraph

if TYPE_CHECKING:
    from .pagerank import PageRankResult

RANK_CSV_HEADER = (
    "node_id,lat,lon,rank,strength,norm,c,in_degree,out_degree,total_degree"
)


class HubRow(NamedTuple):
    node_id: int
    lat_deg: float
    lon_deg: float
    rank: int
    strength: float
    norm: float
    c: float
    in_degree: int
    out_degree: int
    total_degree: int


@dataclass
class HubReport:
    """Per-node ranking table, sorted by rank then by node id.

    ``top`` and ``bottom`` are slices of ``rows``: the best-ranked and
    worst-ranked selections requested at build time.
    """

    rows: list[HubRow]
    top: list[HubRow]
    bottom: list[HubRow]


def competition_rank(values: Sequence[float]) -> list[int]:
    """Ranks on descending value: highest scores rank 1, ties share a rank.

    A run of k equal values at rank r is followed by rank r + k.
    """
    n = len(values)
    order = sorted(range(n), key=values.__getitem__, reverse=True)
    ranks = [0] * n
    current_rank = 0
    previous = None
    for position, i in enumerate(order, start=1):
        value = values[i]
        if value != previous:
            current_rank = position
            previous = value
        ranks[i] = current_rank
    return ranks


def strength(norm: Sequence[float]) -> np.ndarray:
    """Normalized scores scaled by 1e6."""
    return np.asarray(norm, dtype=np.float64) * 1e6


def hub_report(
    graph: RoadGraph, result: PageRankResult, top_n: int, bottom_n: int
) -> HubReport:
    """Join scores, ranks, strengths, degrees and coordinates per node.

    Rows are ordered by ascending rank, then by ascending external node
    id within a tie. Raises ``InvalidSelection`` if either selection size
    is negative or exceeds the node count.
    """
    m = graph.node_count
    if not 0 <= top_n <= m:
        raise InvalidSelection(f"top_n {top_n} outside [0, {m}]")
    if not 0 <= bottom_n <= m:
        raise InvalidSelection(f"bottom_n {bottom_n} outside [0, {m}]")

    ranks = competition_rank(result.c)
    strengths = strength(result.norm)
    degree_table = degrees(graph)

    rows = [
        HubRow(
            node_id=node.node_id,
            lat_deg=node.point.lat_deg,
            lon_deg=node.point.lon_deg,
            rank=ranks[i],
            strength=float(strengths[i]),
            norm=float(result.norm[i]),
            c=float(result.c[i]),
            in_degree=degree_table[i][0],
            out_degree=degree_table[i][1],
            total_degree=degree_table[i][2],
        )
        for i, node in enumerate(graph.nodes)
    ]
    rows.sort(key=lambda row: (row.rank, row.node_id))
    bottom = rows[m - bottom_n :] if bottom_n else []
    return HubReport(rows=rows, top=rows[:top_n], bottom=bottom)


def _format_row(row: HubRow) -> str:
    return (
        f"{row.node_id},{row.lat_deg!r},{row.lon_deg!r},{row.rank},"
        f"{row.strength:.10g},{row.norm:.17g},{row.c:.17g},"
        f"{row.in_degree},{row.out_degree},{row.total_degree}"
    )


def write_rank_csv(rows: Sequence[HubRow], stream: TextIO) -> None:
    """Write hub rows in the rank CSV format (full-precision scores)."""
    stream.write(RANK_CSV_HEADER + "\n")
    for row in rows:
        stream.write(_format_row(row) + "\n")


def read_rank_csv(stream: TextIO) -> list[HubRow]:
    """Parse a rank CSV back into hub rows."""
    lines = (line.rstrip("\n").rstrip("\r") for line in stream)
    try:
        header = next(lines)
    except StopIteration:
        raise MalformedRow(1, "missing header") from None
    if header != RANK_CSV_HEADER:
        raise MalformedRow(1, f"expected header {RANK_CSV_HEADER!r}, got {header!r}")
    rows = []
    for line_no, line in enumerate(lines, start=2):
        fields = line.split(",")
        if len(fields) != 10:
            raise MalformedRow(line_no, f"expected 10 columns, got {len(fields)}")
        try:
            rows.append(
                HubRow(
                    node_id=int(fields[0]),
                    lat_deg=float(fields[1]),
                    lon_deg=float(fields[2]),
                    rank=int(fields[3]),
                    strength=float(fields[4]),
                    norm=float(fields[5]),
                    c=float(fields[6]),
                    in_degree=int(fields[7]),
                    out_degree=int(fields[8]),
                    total_degree=int(fields[9]),
                )
            )
        except ValueError as exc:
            raise MalformedRow(line_no, str(exc)) from None
    return rows


def write_geojson(rows: Sequence[HubRow], stream: TextIO) -> None:
    """Write hub rows as a GeoJSON FeatureCollection of Point features.

    Coordinates follow the GeoJSON longitude-first convention; all rank
    CSV fields ride along as feature properties.
    """
    features = [
        {
            "type": "Feature",
            "geometry": {
                "type": "Point",
                "coordinates": [row.lon_deg, row.lat_deg],
            },
            "properties": {
                "node_id": row.node_id,
                "lat": row.lat_deg,
                "lon": row.lon_deg,
                "rank": row.rank,
                "strength": row.strength,
                "norm": row.norm,
                "c": row.c,
                "in_degree": row.in_degree,
                "out_degree": row.out_degree,
                "total_degree": row.total_degree,
            },
        }
        for row in rows
    ]
    collection = {"type": "FeatureCollection", "features": features}
    json.dump(collection, stream, separators=(",", ":"))
    stream.write("\n")
