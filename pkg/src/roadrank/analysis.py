"""Degree statistics, rank/strength correlation and the robustness probe.

The regressions mirror the degree-versus-importance panels of the hub
study: ordinary least squares for the linear model, and a log-linear fit
y = A * exp(B * x) for the exponential model, with the coefficient of
determination reported on the scale the fit was performed on.

The attack simulation removes the top-ranked hubs and measures how much
of the network stays mutually reachable: the size of the largest
surviving strongly connected component over the surviving node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import InvalidSelection, NonPositiveValue, ZeroVariance
from .ingest import RoadGraph, induced_subgraph
from .scc import tarjan_scc

if TYPE_CHECKING:
    from .pagerank import PageRankResult
    from .ranking import HubReport


@dataclass(frozen=True)
class RegressionFit:
    model_kind: str  # "linear" or "exponential"
    slope: float
    intercept: float
    r_squared: float
    n_points: int


def degrees(graph: RoadGraph) -> list[tuple[int, int, int]]:
    """Per-node (in_degree, out_degree, total_degree)."""
    return [
        (len(graph.in_adjacency[i]), len(graph.out_adjacency[i]),
         len(graph.in_adjacency[i]) + len(graph.out_adjacency[i]))
        for i in range(graph.node_count)
    ]


def linear_fit(x: Sequence[float], y: Sequence[float]) -> RegressionFit:
    """Ordinary least squares y = slope * x + intercept.

    Needs at least 3 points. Raises ``ZeroVariance`` when all x are equal
    (the slope is undefined) or all y are equal (SS_tot = 0 leaves R^2
    undefined).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 3:
        raise ValueError("need at least 3 points")

    x_centered = x - x.mean()
    y_centered = y - y.mean()
    ss_xx = float(x_centered @ x_centered)
    ss_tot = float(y_centered @ y_centered)
    if ss_xx == 0.0:
        raise ZeroVariance("all x values are equal")
    if ss_tot == 0.0:
        raise ZeroVariance("all y values are equal")

    slope = float(x_centered @ y_centered) / ss_xx
    intercept = float(y.mean()) - slope * float(x.mean())
    residuals = y - (slope * x + intercept)
    r_squared = 1.0 - float(residuals @ residuals) / ss_tot
    return RegressionFit("linear", slope, intercept, r_squared, x.shape[0])


def exponential_fit(x: Sequence[float], y: Sequence[float]) -> RegressionFit:
    """Least-squares fit of y = A * exp(B * x) via regression on ln y.

    Reports slope = B, intercept = A, and R^2 of the log-transformed
    problem. Raises ``NonPositiveValue`` if any y is not strictly
    positive, and propagates ``ZeroVariance`` from the underlying linear
    fit (constant y has constant ln y).
    """
    y = np.asarray(y, dtype=np.float64)
    for index, value in enumerate(y):
        if value <= 0.0:
            raise NonPositiveValue(index, float(value))
    inner = linear_fit(x, np.log(y))
    return RegressionFit(
        "exponential",
        slope=inner.slope,
        intercept=math.exp(inner.intercept),
        r_squared=inner.r_squared,
        n_points=inner.n_points,
    )


def rank_strength_curve(report: HubReport) -> list[tuple[int, float]]:
    """(rank, strength) per node, rank ascending.

    Tied ranks repeat their rank coordinate, so the skipped competition
    ranks show up as holes along the rank axis.
    """
    return [(row.rank, row.strength) for row in report.rows]


def attack_simulation(
    graph: RoadGraph, result: PageRankResult, k: int
) -> tuple[list[int], float]:
    """Remove the k best-ranked nodes and measure surviving connectivity.

    Ties in rank are broken by ascending node id. Returns the removed
    external node ids (in removal order) and the size of the largest
    strongly connected component of the remainder divided by the number
    of surviving nodes. Raises ``InvalidSelection`` unless 0 <= k < m.
    """
    m = graph.node_count
    if not 0 <= k < m:
        raise InvalidSelection(f"k {k} outside [0, {m})")

    by_rank = sorted(
        range(m), key=lambda i: (-result.c[i], graph.nodes[i].node_id)
    )
    removed = by_rank[:k]
    removed_ids = [graph.nodes[i].node_id for i in removed]

    removed_set = set(removed)
    survivors = [i for i in range(m) if i not in removed_set]
    subgraph, _ = induced_subgraph(graph, survivors)
    partition = tarjan_scc(subgraph)
    fraction = max(partition.component_sizes) / (m - k)
    return removed_ids, fraction
