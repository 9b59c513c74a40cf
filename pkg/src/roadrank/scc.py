"""Strongly connected components and largest-component extraction.

This is the data-cleaning stage: everything outside the largest strongly
connected component is discarded before ranking, which guarantees every
surviving node has at least one outgoing and one incoming edge (so the
transition matrix downstream has no zero columns).

Tarjan's algorithm is implemented with an explicit stack instead of
recursion: road networks contain paths far longer than CPython's default
recursion limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyGraph
from .ingest import RoadGraph, induced_subgraph


@dataclass
class SccPartition:
    """Assignment of every node to a strongly connected component.

    ``component_of[i]`` is the 0-based label of dense node ``i``;
    ``component_sizes[label]`` its node count. Labels are assigned in
    completion order (reverse topological over the condensation).
    """

    component_of: list[int]
    component_sizes: list[int]
    component_count: int


def tarjan_scc(graph: RoadGraph) -> SccPartition:
    """Partition the graph into strongly connected components.

    Single depth-first pass, O(nodes + edges), iterative.
    """
    n = graph.node_count
    adjacency = graph.out_adjacency

    UNVISITED = -1
    index = [UNVISITED] * n
    lowlink = [0] * n
    on_stack = [False] * n
    scc_stack: list[int] = []
    component_of = [UNVISITED] * n
    component_sizes: list[int] = []
    counter = 0

    for root in range(n):
        if index[root] != UNVISITED:
            continue
        # frames of (node, position of next successor to visit)
        call_stack = [(root, 0)]
        while call_stack:
            v, pos = call_stack.pop()
            if pos == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                scc_stack.append(v)
                on_stack[v] = True
            descended = False
            successors = adjacency[v]
            while pos < len(successors):
                w = successors[pos][0]
                pos += 1
                if index[w] == UNVISITED:
                    call_stack.append((v, pos))
                    call_stack.append((w, 0))
                    descended = True
                    break
                if on_stack[w] and index[w] < lowlink[v]:
                    lowlink[v] = index[w]
            if descended:
                continue
            if lowlink[v] == index[v]:
                label = len(component_sizes)
                size = 0
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = False
                    component_of[w] = label
                    size += 1
                    if w == v:
                        break
                component_sizes.append(size)
            if call_stack:
                parent = call_stack[-1][0]
                if lowlink[v] < lowlink[parent]:
                    lowlink[parent] = lowlink[v]

    return SccPartition(component_of, component_sizes, len(component_sizes))


def largest_scc_subgraph(
    graph: RoadGraph, partition: SccPartition
) -> tuple[RoadGraph, dict[int, int]]:
    """Induced subgraph on the largest component, plus the old-to-new index map.

    "Largest" means most nodes; a size tie goes to the component
    containing the smallest original node id, so re-running is
    deterministic. Raises ``EmptyGraph`` on a graph with no nodes.
    """
    if graph.node_count == 0:
        raise EmptyGraph("cannot extract a component from an empty graph")

    # per-component minimum node id, for the tie-break
    min_id = [None] * partition.component_count
    for i, label in enumerate(partition.component_of):
        node_id = graph.nodes[i].node_id
        if min_id[label] is None or node_id < min_id[label]:
            min_id[label] = node_id

    best = max(
        range(partition.component_count),
        key=lambda label: (partition.component_sizes[label], -min_id[label]),
    )
    members = [i for i, label in enumerate(partition.component_of) if label == best]
    return induced_subgraph(graph, members)
