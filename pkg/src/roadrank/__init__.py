"""Road-network hub identification: Haversine-weighted graphs, SCC
cleaning, PageRank scoring, competition-ranked hub reports and a
hub-removal robustness probe."""

from .analysis import (
    RegressionFit,
    attack_simulation,
    degrees,
    exponential_fit,
    linear_fit,
    rank_strength_curve,
)
from .geo import EARTH_RADIUS_KM, GeoPoint, deg_to_rad, great_circle_distance, haversine
from .ingest import (
    GeoNode,
    RoadGraph,
    build_graph,
    induced_subgraph,
    parse_edges,
    parse_nodes,
    write_edges_csv,
    write_nodes_csv,
)
from .pagerank import (
    PageRankResult,
    TransitionModel,
    normalize,
    pagerank_iterate,
    score_iterations,
    transition_probabilities,
)
from .ranking import (
    HubReport,
    HubRow,
    competition_rank,
    hub_report,
    read_rank_csv,
    strength,
    write_geojson,
    write_rank_csv,
)
from .scc import SccPartition, largest_scc_subgraph, tarjan_scc

__version__ = "0.1.0"

__all__ = [
    "EARTH_RADIUS_KM",
    "GeoNode",
    "GeoPoint",
    "HubReport",
    "HubRow",
    "PageRankResult",
    "RegressionFit",
    "RoadGraph",
    "SccPartition",
    "TransitionModel",
    "attack_simulation",
    "build_graph",
    "competition_rank",
    "deg_to_rad",
    "degrees",
    "exponential_fit",
    "great_circle_distance",
    "haversine",
    "hub_report",
    "induced_subgraph",
    "largest_scc_subgraph",
    "linear_fit",
    "normalize",
    "pagerank_iterate",
    "parse_edges",
    "parse_nodes",
    "rank_strength_curve",
    "read_rank_csv",
    "score_iterations",
    "strength",
    "tarjan_scc",
    "transition_probabilities",
    "write_edges_csv",
    "write_geojson",
    "write_nodes_csv",
    "write_rank_csv",
]
