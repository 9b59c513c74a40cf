import io
import json
import math
import random

import numpy as np
import pytest

from roadrank.errors import InvalidSelection, MalformedRow
from roadrank.pagerank import pagerank_iterate, transition_probabilities
from roadrank.ranking import (
    HubRow,
    competition_rank,
    hub_report,
    read_rank_csv,
    strength,
    write_geojson,
    write_rank_csv,
)

from helpers import index_graph, random_strongly_connected

ORACLE_EDGES = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]


def ranked_graph(n, edges, **kwargs):
    graph = index_graph(n, edges)
    result = pagerank_iterate(transition_probabilities(graph), **kwargs)
    return graph, result


def test_competition_rank_gap_rule():
    assert competition_rank([10.0, 8.0, 8.0, 5.0]) == [1, 2, 2, 4]


def test_competition_rank_all_tied():
    assert competition_rank([7.0, 7.0, 7.0]) == [1, 1, 1]


def test_competition_rank_strictly_increasing_values():
    assert competition_rank([1.0, 2.0, 3.0]) == [3, 2, 1]


def test_competition_rank_empty():
    assert competition_rank([]) == []


def _check_1224(values, ranks):
    n = len(values)
    for i in range(n):
        for j in range(n):
            assert (values[i] == values[j]) == (ranks[i] == ranks[j])
            if values[i] > values[j]:
                assert ranks[i] < ranks[j]
    by_rank = sorted(ranks)
    # rank r with a run of k is followed by rank r + k
    position = 0
    while position < n:
        r = by_rank[position]
        run = by_rank.count(r)
        assert r == position + 1
        position += run


def test_competition_rank_laws_on_random_vectors():
    rng = random.Random(53)
    for _ in range(200):
        size = rng.randint(1, 40)
        # draw from a small grid to force ties
        values = [float(rng.randint(0, 8)) for _ in range(size)]
        ranks = competition_rank(values)
        _check_1224(values, ranks)


def test_competition_rank_invariant_under_monotone_transforms():
    rng = random.Random(59)
    for _ in range(100):
        size = rng.randint(1, 30)
        values = [float(rng.randint(0, 10)) for _ in range(size)]
        base = competition_rank(values)
        assert competition_rank([2.0 * v + 3.0 for v in values]) == base
        assert competition_rank([math.exp(v) for v in values]) == base
        assert competition_rank([v ** 3 for v in values]) == base


def test_strength_microscale_example():
    assert strength([69.96e-6])[0] == pytest.approx(69.96, rel=1e-12)


def test_strength_uniform_four_nodes():
    assert strength([0.25, 0.25, 0.25, 0.25]).tolist() == [250000.0] * 4


def test_strength_mean_identity():
    rng = random.Random(61)
    for _ in range(20):
        m = rng.randint(2, 500)
        raw = np.array([rng.uniform(0.1, 5.0) for _ in range(m)])
        norm = raw / raw.sum()
        mean = float(strength(norm).mean())
        assert mean == pytest.approx(1e6 / m, rel=1e-9)
    # at city scale: a 66,854-node network has mean strength of about 15
    assert abs(1e6 / 66854 - 14.958) < 5e-4


def test_hub_report_three_cycle():
    graph, result = ranked_graph(3, [(0, 1), (1, 2), (2, 0)])
    report = hub_report(graph, result, 3, 3)
    assert [row.rank for row in report.rows] == [1, 1, 1]
    for row in report.rows:
        assert row.strength == pytest.approx(1e6 / 3, rel=1e-12)
    assert [row.node_id for row in report.rows] == [1, 2, 3]  # id breaks the tie
    assert report.top == report.rows
    assert report.bottom == report.rows


def test_hub_report_matches_dense_oracle_ordering():
    graph, result = ranked_graph(4, ORACLE_EDGES, epsilon=1e-12, max_iter=5000)
    report = hub_report(graph, result, 2, 1)
    assert [row.node_id for row in report.rows] == [3, 2, 1, 4]
    assert [row.rank for row in report.rows] == [1, 2, 3, 3]
    assert [row.node_id for row in report.top] == [3, 2]
    assert [row.node_id for row in report.bottom] == [4]
    top = report.rows[0]
    assert top.in_degree == 2 and top.out_degree == 2 and top.total_degree == 4


def test_hub_report_row_count_and_rank_range():
    rng = random.Random(67)
    for _ in range(10):
        n, edges = random_strongly_connected(rng, rng.randint(2, 40))
        graph, result = ranked_graph(n, edges)
        report = hub_report(graph, result, 0, 0)
        assert len(report.rows) == n
        assert report.top == [] and report.bottom == []
        for row in report.rows:
            assert 1 <= row.rank <= n
        # ranks ascend, ties ordered by ascending node id
        for a, b in zip(report.rows, report.rows[1:]):
            assert (a.rank, a.node_id) < (b.rank, b.node_id)
        # strength strictly decreases across distinct ranks
        for a, b in zip(report.rows, report.rows[1:]):
            if a.rank != b.rank:
                assert a.strength > b.strength
            else:
                assert a.strength == b.strength


def test_distinct_ranks_equal_distinct_strengths():
    rng = random.Random(71)
    for _ in range(10):
        n, edges = random_strongly_connected(rng, rng.randint(2, 40))
        graph, result = ranked_graph(n, edges)
        report = hub_report(graph, result, 0, 0)
        assert len({row.rank for row in report.rows}) == len(
            {row.strength for row in report.rows}
        )


def test_hub_report_rejects_bad_selection():
    graph, result = ranked_graph(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(InvalidSelection):
        hub_report(graph, result, 4, 0)
    with pytest.raises(InvalidSelection):
        hub_report(graph, result, 0, 4)
    with pytest.raises(InvalidSelection):
        hub_report(graph, result, -1, 0)


def test_rank_csv_round_trip():
    graph, result = ranked_graph(4, ORACLE_EDGES)
    report = hub_report(graph, result, 4, 4)
    buffer = io.StringIO()
    write_rank_csv(report.rows, buffer)
    buffer.seek(0)
    rows = read_rank_csv(buffer)
    assert len(rows) == 4
    for got, expected in zip(rows, report.rows):
        assert got.node_id == expected.node_id
        assert got.rank == expected.rank
        assert got.lat_deg == expected.lat_deg
        assert got.lon_deg == expected.lon_deg
        assert got.norm == expected.norm  # 17 significant digits round-trip
        assert got.c == expected.c
        assert got.strength == pytest.approx(expected.strength, rel=1e-9)
        assert got.in_degree == expected.in_degree
        assert got.out_degree == expected.out_degree
        assert got.total_degree == expected.total_degree


def test_read_rank_csv_rejects_garbage():
    with pytest.raises(MalformedRow):
        read_rank_csv(io.StringIO("wrong,header\n"))
    header = (
        "node_id,lat,lon,rank,strength,norm,c,in_degree,out_degree,total_degree\n"
    )
    with pytest.raises(MalformedRow):
        read_rank_csv(io.StringIO(header + "1,2,3\n"))
    with pytest.raises(MalformedRow):
        read_rank_csv(io.StringIO(header + "x,0,0,1,1,1,1,1,1,2\n"))


def test_geojson_structure():
    graph, result = ranked_graph(4, ORACLE_EDGES)
    report = hub_report(graph, result, 4, 4)
    buffer = io.StringIO()
    write_geojson(report.rows, buffer)
    collection = json.loads(buffer.getvalue())
    assert collection["type"] == "FeatureCollection"
    assert len(collection["features"]) == 4
    for feature, row in zip(collection["features"], report.rows):
        assert feature["type"] == "Feature"
        assert feature["geometry"]["type"] == "Point"
        # GeoJSON is longitude first
        assert feature["geometry"]["coordinates"] == [row.lon_deg, row.lat_deg]
        properties = feature["properties"]
        assert properties["node_id"] == row.node_id
        assert properties["rank"] == row.rank
        assert properties["strength"] == row.strength
        assert properties["norm"] == row.norm
        assert properties["c"] == row.c
        assert properties["in_degree"] == row.in_degree


def test_hub_row_is_plain_data():
    row = HubRow(1, 0.0, 0.0, 1, 1.0, 1.0, 1.0, 1, 1, 2)
    assert row.node_id == 1
    assert tuple(row) == (1, 0.0, 0.0, 1, 1.0, 1.0, 1.0, 1, 1, 2)
