"""Exception types shared across the package.

Every error raised by roadrank's own checks derives from ``RoadRankError``,
so callers (in particular the CLI) can separate bad input from bugs.
"""

from __future__ import annotations


class RoadRankError(Exception):
    """Base class for all errors raised by roadrank."""


class MalformedRow(RoadRankError):
    """A CSV row could not be parsed."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateNodeId(RoadRankError):
    """The same node id appeared more than once."""

    def __init__(self, node_id: int, line_no: int | None = None):
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}duplicate node id {node_id}")
        self.line_no = line_no
        self.node_id = node_id


class CoordinateOutOfRange(RoadRankError):
    """A latitude or longitude fell outside its valid interval."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class UnknownEndpoint(RoadRankError):
    """An edge referenced a node id that is not in the node set."""

    def __init__(self, edge_row: int, node_id: int):
        super().__init__(f"edge row {edge_row}: unknown node id {node_id}")
        self.edge_row = edge_row
        self.node_id = node_id


class EmptyGraph(RoadRankError):
    """An operation that needs at least one node was given none."""


class DanglingNode(RoadRankError):
    """A node with no outgoing edges reached the transition-matrix builder."""

    def __init__(self, node_index: int):
        super().__init__(f"node index {node_index} has out-degree 0")
        self.node_index = node_index


class NotConverged(RoadRankError):
    """PageRank exhausted its iteration budget.

    Carries the partial result so callers can still inspect or export it.
    """

    def __init__(self, result):
        super().__init__(
            f"no convergence after {result.iterations} iterations "
            f"(epsilon={result.epsilon})"
        )
        self.result = result


class InvalidSelection(RoadRankError):
    """A top/bottom/removal count was outside the valid range."""


class ZeroVariance(RoadRankError):
    """A regression input had no variance, so the fit is undefined."""


class NonPositiveValue(RoadRankError):
    """An exponential fit was given a y value that is not strictly positive."""

    def __init__(self, index: int, value: float):
        super().__init__(f"y[{index}] = {value} is not positive")
        self.index = index
        self.value = value
