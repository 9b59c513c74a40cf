"""Node/edge CSV parsing and construction of the working road graph.

The graph is a sparse directed adjacency structure. Presence of a link is
structural: there is no zero-distance sentinel, which keeps distinct nodes
that share coordinates unambiguous. Self-loops and duplicate directed
edges are dropped at build time.

CSV contracts:

* node file: header ``id,lat,lon``, one node per line, base-10 unsigned
  integer ids, decimal-degree coordinates; comma separated, no quoting.
* edge file: header ``source,target`` with unsigned integer node ids.
* graph export mirrors both formats, with edges gaining a third
  ``distance_km`` column (17 significant digits). ``parse_edges`` accepts
  the exported three-column header as well, ignoring the distance, so an
  exported graph re-ingests directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, TextIO

from .errors import (
    CoordinateOutOfRange,
    DuplicateNodeId,
    MalformedRow,
    UnknownEndpoint,
)
from .geo import GeoPoint, great_circle_distance

NODE_HEADER = "id,lat,lon"
EDGE_HEADER = "source,target"
EDGE_EXPORT_HEADER = "source,target,distance_km"


@dataclass(frozen=True)
class GeoNode:
    """An intersection: external node id plus its coordinates."""

    node_id: int
    point: GeoPoint


@dataclass
class RoadGraph:
    """Sparse weighted directed graph with dense contiguous indexing.

    ``nodes[i]`` is the node at dense index ``i``; dense indices follow
    ascending external node id. ``out_adjacency[i]`` lists
    ``(target_index, distance_km)`` pairs sorted by target index, and
    ``in_adjacency`` mirrors the same edge set for reverse traversal.
    Instances are treated as immutable once built.
    """

    node_count: int
    nodes: list[GeoNode]
    out_adjacency: list[list[tuple[int, float]]]
    in_adjacency: list[list[tuple[int, float]]]
    index_of: dict[int, int]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.out_adjacency)


def _lines(stream: TextIO | Iterable[str]) -> Iterable[str]:
    for line in stream:
        yield line.rstrip("\n").rstrip("\r")


def _parse_unsigned(field: str, line_no: int, what: str) -> int:
    try:
        value = int(field)
    except ValueError:
        raise MalformedRow(line_no, f"{what} {field!r} is not an integer") from None
    if value < 0:
        raise MalformedRow(line_no, f"{what} {field!r} is negative")
    return value


def _parse_float(field: str, line_no: int, what: str) -> float:
    try:
        value = float(field)
    except ValueError:
        raise MalformedRow(line_no, f"{what} {field!r} is not a number") from None
    if not math.isfinite(value):
        raise MalformedRow(line_no, f"{what} {field!r} is not finite")
    return value


def parse_nodes(stream: TextIO | Iterable[str]) -> list[GeoNode]:
    """Parse a node CSV into a list of ``GeoNode`` in file order.

    Raises ``MalformedRow`` on structural problems, ``DuplicateNodeId``
    when an id repeats and ``CoordinateOutOfRange`` when a coordinate
    violates its bounds. Line numbers in errors are 1-based and include
    the header line.
    """
    lines = _lines(stream)
    try:
        header = next(lines)
    except StopIteration:
        raise MalformedRow(1, "missing header") from None
    if header != NODE_HEADER:
        raise MalformedRow(1, f"expected header {NODE_HEADER!r}, got {header!r}")

    nodes: list[GeoNode] = []
    seen: set[int] = set()
    for line_no, line in enumerate(lines, start=2):
        fields = line.split(",")
        if len(fields) != 3:
            raise MalformedRow(line_no, f"expected 3 columns, got {len(fields)}")
        node_id = _parse_unsigned(fields[0], line_no, "node id")
        lat = _parse_float(fields[1], line_no, "latitude")
        lon = _parse_float(fields[2], line_no, "longitude")
        if not -90.0 <= lat <= 90.0:
            raise CoordinateOutOfRange(line_no, f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise CoordinateOutOfRange(line_no, f"longitude {lon} outside [-180, 180]")
        if node_id in seen:
            raise DuplicateNodeId(node_id, line_no)
        seen.add(node_id)
        nodes.append(GeoNode(node_id, GeoPoint(lat, lon)))
    return nodes


def parse_edges(stream: TextIO | Iterable[str]) -> list[tuple[int, int]]:
    """Parse an edge CSV into directed ``(source_id, target_id)`` pairs.

    Pairs come back in file order with duplicates preserved; dedup is
    ``build_graph``'s job. Accepts either the plain two-column format or
    the exported three-column format (the distance column is ignored and
    recomputed on re-ingest).
    """
    lines = _lines(stream)
    try:
        header = next(lines)
    except StopIteration:
        raise MalformedRow(1, "missing header") from None
    if header == EDGE_HEADER:
        width = 2
    elif header == EDGE_EXPORT_HEADER:
        width = 3
    else:
        raise MalformedRow(1, f"expected header {EDGE_HEADER!r}, got {header!r}")

    edges: list[tuple[int, int]] = []
    for line_no, line in enumerate(lines, start=2):
        fields = line.split(",")
        if len(fields) != width:
            raise MalformedRow(line_no, f"expected {width} columns, got {len(fields)}")
        source = _parse_unsigned(fields[0], line_no, "source id")
        target = _parse_unsigned(fields[1], line_no, "target id")
        edges.append((source, target))
    return edges


def build_graph(nodes: list[GeoNode], edges: list[tuple[int, int]]) -> RoadGraph:
    """Assemble the weighted directed graph.

    Dense indices are assigned in ascending node-id order, every edge is
    weighted with the great-circle distance of its endpoints, self-loops
    are dropped, and duplicate ``(source, target)`` pairs collapse to a
    single edge. An edge naming an unknown id raises ``UnknownEndpoint``
    with its 1-based position in ``edges``.
    """
    ordered = sorted(nodes, key=lambda n: n.node_id)
    for prev, cur in zip(ordered, ordered[1:]):
        if prev.node_id == cur.node_id:
            raise DuplicateNodeId(cur.node_id)
    index_of = {node.node_id: i for i, node in enumerate(ordered)}

    n = len(ordered)
    out_sets: list[set[int]] = [set() for _ in range(n)]
    for row, (source, target) in enumerate(edges, start=1):
        if source not in index_of:
            raise UnknownEndpoint(row, source)
        if target not in index_of:
            raise UnknownEndpoint(row, target)
        si = index_of[source]
        ti = index_of[target]
        if si == ti:
            continue
        out_sets[si].add(ti)

    out_adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    in_adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for si in range(n):
        for ti in sorted(out_sets[si]):
            dist = great_circle_distance(ordered[si].point, ordered[ti].point)
            out_adjacency[si].append((ti, dist))
            in_adjacency[ti].append((si, dist))
    # in_adjacency was filled in ascending source order already
    return RoadGraph(n, ordered, out_adjacency, in_adjacency, index_of)


def induced_subgraph(
    graph: RoadGraph, keep_indices: Iterable[int]
) -> tuple[RoadGraph, dict[int, int]]:
    """Induced subgraph on ``keep_indices``, re-indexed densely.

    Returns the new graph and the old-index to new-index map. Edge
    weights are copied, not recomputed, so they stay bit-identical to
    the parent graph's. Dense ordering is preserved (old indices were in
    ascending node-id order, and the subset keeps that order).
    """
    kept = sorted(set(keep_indices))
    index_map = {old: new for new, old in enumerate(kept)}
    nodes = [graph.nodes[old] for old in kept]
    out_adjacency: list[list[tuple[int, float]]] = [[] for _ in kept]
    in_adjacency: list[list[tuple[int, float]]] = [[] for _ in kept]
    for old in kept:
        new = index_map[old]
        for ti, dist in graph.out_adjacency[old]:
            if ti in index_map:
                out_adjacency[new].append((index_map[ti], dist))
        for si, dist in graph.in_adjacency[old]:
            if si in index_map:
                in_adjacency[new].append((index_map[si], dist))
    index_of = {node.node_id: i for i, node in enumerate(nodes)}
    return RoadGraph(len(kept), nodes, out_adjacency, in_adjacency, index_of), index_map


def write_nodes_csv(graph: RoadGraph, stream: TextIO) -> None:
    """Write the node file (``id,lat,lon``) in dense-index order."""
    stream.write(NODE_HEADER + "\n")
    for node in graph.nodes:
        stream.write(f"{node.node_id},{node.point.lat_deg!r},{node.point.lon_deg!r}\n")


def write_edges_csv(graph: RoadGraph, stream: TextIO) -> None:
    """Write the edge file (``source,target,distance_km``)."""
    stream.write(EDGE_EXPORT_HEADER + "\n")
    for si, row in enumerate(graph.out_adjacency):
        source_id = graph.nodes[si].node_id
        for ti, dist in row:
            stream.write(f"{source_id},{graph.nodes[ti].node_id},{dist:.17g}\n")
