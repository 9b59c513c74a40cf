"""Shared fixtures-by-hand and independent oracles for the test suite.

The oracles deliberately take different routes from the library code:
reachability closure by boolean matrix powers instead of Tarjan, a dense
linear solve instead of power iteration, the spherical law of cosines
instead of the haversine form, and normal equations instead of the
centered-covariance least squares.
"""

from __future__ import annotations

import math
import random

import numpy as np

from roadrank.geo import EARTH_RADIUS_KM, GeoPoint
from roadrank.ingest import GeoNode, RoadGraph, build_graph


# ---------------------------------------------------------------- builders

def index_graph(n: int, edges: list[tuple[int, int]]) -> RoadGraph:
    """Graph over 0-based index edges; node id = index + 1.

    Dense indices follow ascending node id, so index semantics carry
    straight through to the built graph.
    """
    nodes = [
        GeoNode(i + 1, GeoPoint(14.0 + 0.0005 * i, 120.5 + 0.0007 * (i % 997)))
        for i in range(n)
    ]
    return build_graph(nodes, [(s + 1, t + 1) for s, t in edges])


def random_digraph(rng: random.Random, max_n: int = 40) -> tuple[int, list[tuple[int, int]]]:
    """Random directed graph with edge density drawn from [0.05, 0.3]."""
    n = rng.randint(1, max_n)
    p = rng.uniform(0.05, 0.3)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < p
    ]
    return n, edges


def random_strongly_connected(
    rng: random.Random, n: int
) -> tuple[int, list[tuple[int, int]]]:
    """Random strongly connected digraph: a permutation cycle plus noise."""
    assert n >= 2
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    for _ in range(rng.randint(n, 3 * n)):
        s = rng.randrange(n)
        t = rng.randrange(n)
        if s != t:
            edges.add((s, t))
    return n, sorted(edges)


# ----------------------------------------------------------------- oracles

def closure_partition(n: int, edges: list[tuple[int, int]]) -> set[frozenset[int]]:
    """SCC partition from transitive closure by boolean matrix powers."""
    reach = np.eye(n, dtype=np.uint8)
    for s, t in edges:
        reach[s, t] = 1
    while True:
        grown = ((reach.astype(np.int64) @ reach) > 0).astype(np.uint8) | reach
        if np.array_equal(grown, reach):
            break
        reach = grown
    mutual = (reach > 0) & (reach.T > 0)
    components: set[frozenset[int]] = set()
    seen: set[int] = set()
    for i in range(n):
        if i not in seen:
            members = frozenset(int(j) for j in np.nonzero(mutual[i])[0])
            seen.update(members)
            components.add(members)
    return components


def partition_as_sets(partition) -> set[frozenset[int]]:
    groups: dict[int, set[int]] = {}
    for i, label in enumerate(partition.component_of):
        groups.setdefault(label, set()).add(i)
    return {frozenset(g) for g in groups.values()}


def dense_pagerank_solve(
    n: int, edges: list[tuple[int, int]], damping: float
) -> np.ndarray:
    """Fixed point of c = (1-d) + d*P*c by direct dense elimination."""
    out_degree = [0] * n
    for s, _t in edges:
        out_degree[s] += 1
    P = np.zeros((n, n))
    for s, t in edges:
        P[t, s] = 1.0 / out_degree[s]
    return np.linalg.solve(np.eye(n) - damping * P, np.full(n, 1.0 - damping))


def law_of_cosines_km(a: GeoPoint, b: GeoPoint) -> float:
    """Spherical law of cosines distance, the haversine cross-check."""
    phi1 = math.radians(a.lat_deg)
    phi2 = math.radians(b.lat_deg)
    dlam = math.radians(b.lon_deg - a.lon_deg)
    arg = math.sin(phi1) * math.sin(phi2) + math.cos(phi1) * math.cos(phi2) * math.cos(dlam)
    arg = max(-1.0, min(1.0, arg))
    return EARTH_RADIUS_KM * math.acos(arg)


def normal_equations_fit(x, y) -> tuple[float, float, float]:
    """(intercept, slope, r_squared) from the normal equations."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    X = np.column_stack([np.ones_like(x), x])
    beta = np.linalg.solve(X.T @ X, X.T @ y)
    predicted = X @ beta
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return float(beta[0]), float(beta[1]), 1.0 - ss_res / ss_tot


def random_geopoint(rng: random.Random) -> GeoPoint:
    return GeoPoint(rng.uniform(-90.0, 90.0), rng.uniform(-180.0, 180.0))
