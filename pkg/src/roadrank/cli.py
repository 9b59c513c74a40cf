"""Batch command-line front end.

Three subcommands share one output directory:

* ``roadrank rank`` ingests the node/edge CSVs, prunes to the largest
  strongly connected component, runs PageRank and writes the ranked
  artifacts plus a run manifest.
* ``roadrank analyze`` reads a completed rank directory and writes the
  rank-strength curve and the degree regression table.
* ``roadrank attack`` reads a completed rank directory and writes the
  hub-removal robustness table for k = 0..K nested removals.

Exit codes are stable: 0 success, 1 input or configuration error,
2 PageRank did not converge (artifacts are still written, flagged in the
manifest). Outputs carry no timestamps, so identical inputs and options
produce byte-identical artifact directories.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import analysis, ingest, pagerank, ranking, scc
from .errors import NotConverged, RoadRankError
from .geo import EARTH_RADIUS_KM

CLEANED_NODES_CSV = "cleaned_nodes.csv"
CLEANED_EDGES_CSV = "cleaned_edges.csv"
RANKS_CSV = "ranks.csv"
TOP_CSV = "top_hubs.csv"
BOTTOM_CSV = "bottom_hubs.csv"
GEOJSON = "hubs.geojson"
MANIFEST = "manifest.txt"
CURVE_CSV = "curve.csv"
ANALYSIS_CSV = "analysis.csv"
ATTACK_CSV = "attack.csv"


@dataclass
class PipelineConfig:
    node_path: Path | None = None
    edge_path: Path | None = None
    output_dir: Path = Path(".")
    damping: float = pagerank.DEFAULT_DAMPING
    epsilon: float = pagerank.DEFAULT_EPSILON
    max_iters: int = pagerank.DEFAULT_MAX_ITER
    top_n: int = 25
    bottom_n: int = 5
    attack_k: int = 0

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping {self.damping} outside (0, 1)")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon {self.epsilon} must be positive")
        if self.top_n < 0 or self.bottom_n < 0:
            raise ValueError("top_n and bottom_n must be non-negative")
        if self.attack_k < 0:
            raise ValueError("attack k must be non-negative")


def _write_manifest(path: Path, entries: list[tuple[str, object]]) -> None:
    # flat key=value lines, fixed order, no timestamps: diff-friendly
    with path.open("w", encoding="utf-8") as stream:
        for key, value in entries:
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, float):
                value = repr(value)
            stream.write(f"{key}={value}\n")


def _read_manifest(path: Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition("=")
        entries[key] = value
    return entries


def cmd_rank(config: PipelineConfig) -> int:
    """Ingest, clean, rank and export. Returns the process exit code."""
    with open(config.node_path, encoding="utf-8") as stream:
        nodes = ingest.parse_nodes(stream)
    with open(config.edge_path, encoding="utf-8") as stream:
        edges = ingest.parse_edges(stream)
    raw_graph = ingest.build_graph(nodes, edges)

    partition = scc.tarjan_scc(raw_graph)
    graph, _ = scc.largest_scc_subgraph(raw_graph, partition)

    model = pagerank.transition_probabilities(graph)
    converged = True
    try:
        result = pagerank.pagerank_iterate(
            model, config.damping, config.epsilon, config.max_iters
        )
    except NotConverged as exc:
        result = exc.result
        converged = False
        print(f"warning: {exc}", file=sys.stderr)

    top_n = min(config.top_n, graph.node_count)
    bottom_n = min(config.bottom_n, graph.node_count)
    report = ranking.hub_report(graph, result, top_n, bottom_n)

    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    with (out / CLEANED_NODES_CSV).open("w", encoding="utf-8") as stream:
        ingest.write_nodes_csv(graph, stream)
    with (out / CLEANED_EDGES_CSV).open("w", encoding="utf-8") as stream:
        ingest.write_edges_csv(graph, stream)
    with (out / RANKS_CSV).open("w", encoding="utf-8") as stream:
        ranking.write_rank_csv(report.rows, stream)
    with (out / TOP_CSV).open("w", encoding="utf-8") as stream:
        ranking.write_rank_csv(report.top, stream)
    with (out / BOTTOM_CSV).open("w", encoding="utf-8") as stream:
        ranking.write_rank_csv(report.bottom, stream)
    with (out / GEOJSON).open("w", encoding="utf-8") as stream:
        ranking.write_geojson(report.rows, stream)
    _write_manifest(
        out / MANIFEST,
        [
            ("nodes_before", raw_graph.node_count),
            ("edges_before", raw_graph.edge_count),
            ("scc_count", partition.component_count),
            ("nodes_after", graph.node_count),
            ("edges_after", graph.edge_count),
            ("iterations", result.iterations),
            ("converged", converged),
            ("damping", config.damping),
            ("epsilon", config.epsilon),
            ("max_iters", config.max_iters),
            ("top_n", top_n),
            ("bottom_n", bottom_n),
            ("earth_radius_km", EARTH_RADIUS_KM),
        ],
    )
    return 0 if converged else 2


def _require(path: Path) -> Path:
    if not path.is_file():
        raise FileNotFoundError(f"missing rank artifact: {path}")
    return path


def cmd_analyze(config: PipelineConfig) -> int:
    """Write the rank-strength curve and the degree regression table."""
    out = config.output_dir
    with _require(out / RANKS_CSV).open(encoding="utf-8") as stream:
        rows = ranking.read_rank_csv(stream)

    with (out / CURVE_CSV).open("w", encoding="utf-8") as stream:
        stream.write("rank,strength\n")
        for row in rows:
            stream.write(f"{row.rank},{row.strength:.10g}\n")

    series = {
        "out_degree": [float(row.out_degree) for row in rows],
        "in_degree": [float(row.in_degree) for row in rows],
        "total_degree": [float(row.total_degree) for row in rows],
    }
    targets = {
        "c": [row.c for row in rows],
        # rebuilt from the full-precision norm column: the CSV strength
        # field is rounded to 10 significant digits for display
        "strength": [row.norm * 1e6 for row in rows],
    }
    with (out / ANALYSIS_CSV).open("w", encoding="utf-8") as stream:
        stream.write("fit,x_variable,y_variable,slope,intercept,r_squared,n_points\n")
        for x_name, x in series.items():
            for y_name, y in targets.items():
                try:
                    fits = [
                        analysis.linear_fit(x, y),
                        analysis.exponential_fit(x, y),
                    ]
                except RoadRankError:
                    # no variance on either axis: both models are undefined
                    stream.write(f"degenerate,{x_name},{y_name},,,,{len(x)}\n")
                    continue
                for fit in fits:
                    stream.write(
                        f"{fit.model_kind},{x_name},{y_name},{fit.slope!r},"
                        f"{fit.intercept!r},{fit.r_squared!r},{fit.n_points}\n"
                    )
    return 0


def cmd_attack(config: PipelineConfig) -> int:
    """Write the nested hub-removal robustness table for k = 0..attack_k."""
    out = config.output_dir
    with _require(out / CLEANED_NODES_CSV).open(encoding="utf-8") as stream:
        nodes = ingest.parse_nodes(stream)
    with _require(out / CLEANED_EDGES_CSV).open(encoding="utf-8") as stream:
        edges = ingest.parse_edges(stream)
    graph = ingest.build_graph(nodes, edges)
    with _require(out / RANKS_CSV).open(encoding="utf-8") as stream:
        rows = ranking.read_rank_csv(stream)
    manifest = _read_manifest(_require(out / MANIFEST))

    c = np.zeros(graph.node_count)
    norm = np.zeros(graph.node_count)
    for row in rows:
        index = graph.index_of[row.node_id]
        c[index] = row.c
        norm[index] = row.norm
    result = pagerank.PageRankResult(
        c=c,
        norm=norm,
        iterations=int(manifest["iterations"]),
        converged=manifest["converged"] == "true",
        damping=float(manifest["damping"]),
        epsilon=float(manifest["epsilon"]),
    )

    with (out / ATTACK_CSV).open("w", encoding="utf-8") as stream:
        stream.write("k,removed_node_ids,largest_scc_fraction\n")
        for k in range(config.attack_k + 1):
            removed_ids, fraction = analysis.attack_simulation(graph, result, k)
            joined = ";".join(str(node_id) for node_id in removed_ids)
            stream.write(f"{k},{joined},{fraction!r}\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roadrank",
        description="Identify critical road-network hubs with PageRank.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="ingest, clean, rank and export")
    rank.add_argument("--nodes", required=True, type=Path, help="node CSV (id,lat,lon)")
    rank.add_argument("--edges", required=True, type=Path, help="edge CSV (source,target)")
    rank.add_argument("--out", required=True, type=Path, help="output directory")
    rank.add_argument("--damping", type=float, default=pagerank.DEFAULT_DAMPING)
    rank.add_argument("--epsilon", type=float, default=pagerank.DEFAULT_EPSILON)
    rank.add_argument("--max-iters", type=int, default=pagerank.DEFAULT_MAX_ITER)
    rank.add_argument("--top", type=int, default=25, help="top selection size")
    rank.add_argument("--bottom", type=int, default=5, help="bottom selection size")

    analyze = sub.add_parser("analyze", help="curve and regression table")
    analyze.add_argument("--out", required=True, type=Path, help="rank output directory")

    attack = sub.add_parser("attack", help="hub-removal robustness table")
    attack.add_argument("--out", required=True, type=Path, help="rank output directory")
    attack.add_argument("--k", required=True, type=int, help="maximum removals")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "rank":
            config = PipelineConfig(
                node_path=args.nodes,
                edge_path=args.edges,
                output_dir=args.out,
                damping=args.damping,
                epsilon=args.epsilon,
                max_iters=args.max_iters,
                top_n=args.top,
                bottom_n=args.bottom,
            )
            return cmd_rank(config)
        if args.command == "analyze":
            return cmd_analyze(PipelineConfig(output_dir=args.out))
        config = PipelineConfig(output_dir=args.out, attack_k=args.k)
        return cmd_attack(config)
    except (RoadRankError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
