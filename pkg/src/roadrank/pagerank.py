"""Damped PageRank scoring over the cleaned road graph.

Scoring is topology-only: the transition probability of every edge j->i
is 1/outdegree(j), uniform over j's outgoing links, ignoring distances.
Scores start at 1 for every node and are updated synchronously with

    sp_i = sum_j p_ij * c_j
    c_i  = (1 - d) + d * sp_i

until the L1 change between consecutive score vectors drops below
``epsilon``. With a column-stochastic transition matrix the score total
stays equal to the node count at every step, and each score is bounded
below by ``1 - d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator

import numpy as np

from .errors import DanglingNode, EmptyGraph, NotConverged
from .ingest import RoadGraph
from .ranking import competition_rank

DEFAULT_DAMPING = 0.85
DEFAULT_EPSILON = 1e-8
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class TransitionModel:
    """Sparse column-stochastic transition probabilities.

    Edge-parallel arrays grouped by destination row: edge k carries
    probability ``prob[k]`` from node ``src[k]`` to node ``dst[k]``.
    Grouping follows the graph's in-adjacency (destinations ascending,
    sources ascending within a destination), which fixes the float
    accumulation order and keeps results reproducible.
    """

    node_count: int
    dst: np.ndarray
    src: np.ndarray
    prob: np.ndarray


@dataclass(frozen=True)
class PageRankResult:
    """Final scores plus the iteration metadata that produced them."""

    c: np.ndarray
    norm: np.ndarray
    iterations: int
    converged: bool
    damping: float
    epsilon: float


def transition_probabilities(graph: RoadGraph) -> TransitionModel:
    """Build the transition model p_ij = 1/outdegree(j) for each edge j->i.

    Requires every node to have at least one outgoing edge, which the
    largest-SCC cleaning guarantees for graphs of two or more nodes;
    a node with out-degree 0 raises ``DanglingNode``.
    """
    if graph.node_count == 0:
        raise EmptyGraph("cannot build transition probabilities without nodes")
    for j in range(graph.node_count):
        if not graph.out_adjacency[j]:
            raise DanglingNode(j)

    out_degree = [len(row) for row in graph.out_adjacency]
    dst: list[int] = []
    src: list[int] = []
    prob: list[float] = []
    for i in range(graph.node_count):
        for j, _dist in graph.in_adjacency[i]:
            dst.append(i)
            src.append(j)
            prob.append(1.0 / out_degree[j])
    return TransitionModel(
        node_count=graph.node_count,
        dst=np.asarray(dst, dtype=np.intp),
        src=np.asarray(src, dtype=np.intp),
        prob=np.asarray(prob, dtype=np.float64),
    )


def score_iterations(model: TransitionModel, damping: float) -> Iterator[np.ndarray]:
    """Yield the score vector after each synchronous update, starting from c = 1.

    Exposed separately from ``pagerank_iterate`` so per-iteration
    invariants (score total, residual decay) can be observed directly.
    """
    base = 1.0 - damping
    c = np.ones(model.node_count)
    while True:
        # bincount accumulates in edge order: deterministic reduction
        sp = np.bincount(
            model.dst, weights=model.prob * c[model.src], minlength=model.node_count
        )
        c = base + damping * sp
        yield c


def pagerank_iterate(
    model: TransitionModel,
    damping: float = DEFAULT_DAMPING,
    epsilon: float = DEFAULT_EPSILON,
    max_iter: int = DEFAULT_MAX_ITER,
    stop_on_stable_ranks: int = 0,
) -> PageRankResult:
    """Run the damped sum-product iteration until convergence.

    Stops when the L1 difference between consecutive score vectors drops
    below ``epsilon``. ``stop_on_stable_ranks``, when set to some k > 0,
    adds a secondary stop after the competition ranking of the scores has
    stayed identical for k consecutive iterations (off by default).
    Raises ``NotConverged``, carrying the partial result, if ``max_iter``
    is exhausted first.
    """
    if not 0.0 < damping < 1.0:
        raise ValueError(f"damping {damping} outside (0, 1)")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon {epsilon} must be positive")
    if max_iter < 1:
        raise ValueError(f"max_iter {max_iter} must be at least 1")

    previous = np.ones(model.node_count)
    previous_ranks: list[int] | None = None
    stable_run = 0
    iterations = 0
    for c in islice(score_iterations(model, damping), max_iter):
        iterations += 1
        residual = float(np.abs(c - previous).sum())
        if residual < epsilon:
            return PageRankResult(
                c, normalize(c), iterations, True, damping, epsilon
            )
        if stop_on_stable_ranks > 0:
            ranks = competition_rank(c)
            stable_run = stable_run + 1 if ranks == previous_ranks else 1
            previous_ranks = ranks
            if stable_run >= stop_on_stable_ranks:
                return PageRankResult(
                    c, normalize(c), iterations, True, damping, epsilon
                )
        previous = c
    raise NotConverged(
        PageRankResult(previous, normalize(previous), iterations, False, damping, epsilon)
    )


def normalize(c: np.ndarray) -> np.ndarray:
    """Scale scores to sum to 1. All inputs must be positive."""
    c = np.asarray(c, dtype=np.float64)
    return c / c.sum()
