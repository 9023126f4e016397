import csv
import json
import random

import pytest

from steinermap import Config, Mapping, SteinerTable, map_hypergraph
from steinermap.cli import CSV_COLUMNS, EXIT_CONFIG, EXIT_INFEASIBLE, EXIT_IO, EXIT_OK, parse_target, run
from steinermap.errors import InfeasibleBalance
from steinermap.hypergraph import Hypergraph, complete_target
from steinermap.instances import random_hypergraph
from steinermap.io import generate_grid, parse_mapping, write_hmetis, write_target_graph
from steinermap.mapping import evaluate_connectivity_metric
from steinermap.oracle import independent_objective


@pytest.fixture
def tiny(tmp_path):
    hg = random_hypergraph(40, 60, random.Random(2), node_weights=(1, 2), net_weights=(1, 4))
    path = tmp_path / "tiny.hgr"
    path.write_text(write_hmetis(hg))
    return hg, path


def cli(*args):
    return run([str(a) for a in args])


def test_default_run_is_balanced_and_reports_its_objective(tiny, tmp_path):
    hg, path = tiny
    out, stats = tmp_path / "map.txt", tmp_path / "stats.csv"
    assert cli("--hypergraph", path, "--target", "grid:2x3", "--output", out, "--stats", stats) == EXIT_OK
    target = generate_grid(2, 3, 0)
    blocks = parse_mapping(out.read_text(), hg.num_nodes, target.k)
    assert Mapping(hg, SteinerTable(target), blocks, 0.03).is_balanced()
    rows = list(csv.DictReader(stats.open()))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 1
    assert int(rows[0]["objective"]) == independent_objective(hg, target, blocks, size_limit=4)
    assert int(rows[0]["connectivity"]) == evaluate_connectivity_metric(hg, blocks)


def test_stats_rows_append_under_one_header(tiny, tmp_path):
    _, path = tiny
    stats, detail = tmp_path / "s.csv", tmp_path / "s.json"
    for seed in (1, 2):
        assert cli("--hypergraph", path, "--target", "complete:3", "--seed", seed,
                   "--stats", stats, "--stats-json", detail) == EXIT_OK
    lines = stats.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS) and len(lines) == 3
    record = json.loads(detail.read_text())
    assert set(CSV_COLUMNS) <= set(record) and "levels" in record


def test_identical_runs_give_identical_bytes(tiny, tmp_path):
    _, path = tiny
    outs = []
    for i in range(2):
        out = tmp_path / f"m{i}.txt"
        assert cli("--hypergraph", path, "--target", "grid:2x2", "--preset", "quality",
                   "--seed", 7, "--output", out) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_two_phase_and_quality_modes_run(tiny):
    hg, _ = tiny
    target = generate_grid(2, 3, 1)
    for config in (Config(mode="two-phase"), Config(preset="quality"), Config(mode="two-phase", preset="quality")):
        res = map_hypergraph(hg, target, config)
        assert res.objective == independent_objective(hg, target, res.blocks, size_limit=4)
        assert Mapping(hg, SteinerTable(target), res.blocks, 0.03).is_balanced()


def test_connectivity_on_complete_target_is_plain_partitioning(tiny):
    hg, _ = tiny
    res = map_hypergraph(hg, complete_target(4), Config(objective="connectivity"))
    assert res.objective == res.connectivity
    steiner = map_hypergraph(hg, complete_target(4), Config(objective="steiner"))
    assert steiner.objective == steiner.connectivity


def test_query_breakdown_sums_to_100(tiny):
    hg, _ = tiny
    res = map_hypergraph(hg, generate_grid(2, 4, 0), Config())
    q = res.steiner_queries
    assert abs(q["exact"] + q["cache_hit"] + q["cache_miss"] - 100) < 1e-9


def test_times_cover_all_phases(tiny):
    hg, _ = tiny
    res = map_hypergraph(hg, generate_grid(2, 2, 0), Config(preset="quality"))
    assert set(res.times) == {"coarsen", "initial", "lp", "fm", "flow", "total"}
    assert res.times["total"] >= sum(v for p, v in res.times.items() if p != "total") - 1e-6


def test_infeasible_balance_exits_with_2(tmp_path):
    # one node outweighs every block budget
    hg = Hypergraph([[0, 1], [1, 2]], 3, [10, 1, 1])
    path = tmp_path / "heavy.hgr"
    path.write_text(write_hmetis(hg))
    with pytest.raises(InfeasibleBalance):
        map_hypergraph(hg, complete_target(3), Config())
    assert cli("--hypergraph", path, "--target", "complete:3") == EXIT_INFEASIBLE


def test_io_failures_exit_with_3(tiny, tmp_path):
    _, path = tiny
    assert cli("--hypergraph", tmp_path / "missing.hgr", "--target", "grid:2x2") == EXIT_IO
    bad = tmp_path / "bad.hgr"
    bad.write_text("2 3\n1 2\n2 9\n")
    assert cli("--hypergraph", bad, "--target", "grid:2x2") == EXIT_IO
    assert cli("--hypergraph", path, "--target", f"file:{tmp_path / 'none.graph'}") == EXIT_IO


@pytest.mark.parametrize(
    "extra",
    [
        ["--target", "grid:0x3"],
        ["--target", "torus:3"],
        ["--target", "hier:2:2=1"],
        ["--target", "grid:2x2", "--preset", "fast"],
        ["--target", "grid:2x2", "--epsilon", "-1"],
        ["--target", "grid:2x2", "--steiner-size-limit", "1"],
        ["--target", "grid:2x2", "--time-limit", "-3"],
    ],
)
def test_config_errors_exit_with_4(tiny, extra):
    _, path = tiny
    assert cli("--hypergraph", path, *extra) == EXIT_CONFIG


def test_target_specs(tmp_path):
    assert parse_target("grid:3x2").k == 6
    assert parse_target("hier:2:2=1:10").k == 4
    assert parse_target("complete:5").k == 5
    f = tmp_path / "t.graph"
    f.write_text(write_target_graph(generate_grid(2, 2, 4)))
    assert parse_target(f"file:{f}").edges == generate_grid(2, 2, 4).edges
    assert parse_target("grid:2x2", 1).edges != parse_target("grid:2x2", 2).edges


def test_time_limit_still_yields_a_balanced_mapping(tiny):
    hg, _ = tiny
    target = generate_grid(2, 2, 0)
    res = map_hypergraph(hg, target, Config(time_limit=0.0))
    assert Mapping(hg, SteinerTable(target), res.blocks, 0.03).is_balanced()
