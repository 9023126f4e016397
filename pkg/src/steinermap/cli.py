"""Command line front end.

Exit status: 0 success, 2 no balanced mapping exists or was found, 3 input or
output failure, 4 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import FormatError, InfeasibleBalance, SizeLimitTooLarge
from .hypergraph import complete_target
from .io import generate_grid, generate_hierarchy, read_hypergraph, read_target_graph, write_mapping
from .pipeline import Config, map_hypergraph

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_IO = 3
EXIT_CONFIG = 4

CSV_COLUMNS = (
    "instance", "k", "seed", "mode", "preset", "objective", "connectivity",
    "time_total", "time_coarsen", "time_initial", "time_lp", "time_fm", "time_flow",
    "steiner_exact_pct", "cache_hit_pct", "cache_miss_pct",
)


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="steinermap", description="Map a hypergraph onto a weighted target graph.")
    p.add_argument("--hypergraph", required=True, help="hMetis hypergraph file")
    p.add_argument("--target", required=True,
                   help="file:F | grid:NxM | hier:a1:..:al=d1:..:dl | complete:k")
    p.add_argument("--target-seed", type=int, default=0, help="weight seed for grid targets")
    p.add_argument("--epsilon", type=float, default=0.03)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--preset", choices=("default", "quality"), default="default")
    p.add_argument("--mode", choices=("direct", "two-phase"), default="direct")
    p.add_argument("--objective", choices=("steiner", "connectivity"), default="steiner")
    p.add_argument("--steiner-size-limit", type=int, default=4)
    p.add_argument("--output", help="mapping file to write")
    p.add_argument("--stats", help="CSV file receiving one stats row (header written if new)")
    p.add_argument("--stats-json", help="JSON file with the detailed stats record")
    p.add_argument("--time-limit", type=float, help="seconds, checked between phases")
    return p


def parse_target(spec, target_seed=0):
    kind, _, arg = spec.partition(":")
    try:
        if kind == "file":
            return read_target_graph(arg)
        if kind == "grid":
            rows, cols = (int(x) for x in arg.lower().split("x"))
            if rows < 1 or cols < 1:
                raise ValueError
            return generate_grid(rows, cols, target_seed)
        if kind == "hier":
            arity, costs = arg.split("=")
            return generate_hierarchy([int(x) for x in arity.split(":")], [int(x) for x in costs.split(":")])
        if kind == "complete":
            k = int(arg)
            if k < 1:
                raise ValueError
            return complete_target(k)
    except (ValueError, TypeError):
        raise ConfigError(f"malformed target spec {spec!r}") from None
    raise ConfigError(f"unknown target kind {kind!r}")


def stats_row(instance, k, config, result):
    q = result.steiner_queries
    t = result.times
    return {
        "instance": instance, "k": k, "seed": config.seed, "mode": config.mode,
        "preset": config.preset, "objective": result.objective, "connectivity": result.connectivity,
        "time_total": f"{t['total']:.6f}", "time_coarsen": f"{t['coarsen']:.6f}",
        "time_initial": f"{t['initial']:.6f}", "time_lp": f"{t['lp']:.6f}",
        "time_fm": f"{t['fm']:.6f}", "time_flow": f"{t['flow']:.6f}",
        "steiner_exact_pct": f"{q['exact']:.4f}", "cache_hit_pct": f"{q['cache_hit']:.4f}",
        "cache_miss_pct": f"{q['cache_miss']:.4f}",
    }


def _append_csv(path, row):
    path = Path(path)
    new = not path.exists() or path.stat().st_size == 0
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if new:
        writer.writeheader()
    writer.writerow(row)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(buf.getvalue())


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 4
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    config = Config(epsilon=args.epsilon, seed=args.seed, preset=args.preset, mode=args.mode,
                    objective=args.objective, size_limit=args.steiner_size_limit,
                    time_limit=args.time_limit)
    try:
        config.validate()
        if args.time_limit is not None and args.time_limit < 0:
            raise ConfigError("time limit must be non-negative")
        target = parse_target(args.target, args.target_seed)
    except (ConfigError, ValueError) as exc:
        print(f"steinermap: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, FormatError) as exc:
        print(f"steinermap: cannot read target: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        hg = read_hypergraph(args.hypergraph)
    except (OSError, FormatError) as exc:
        print(f"steinermap: cannot read hypergraph: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        result = map_hypergraph(hg, target, config)
    except InfeasibleBalance as exc:
        print(f"steinermap: infeasible balance: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeLimitTooLarge as exc:
        print(f"steinermap: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    instance = Path(args.hypergraph).stem
    row = stats_row(instance, target.k, config, result)
    try:
        if args.output:
            Path(args.output).write_text(write_mapping(result.blocks), encoding="utf-8")
        if args.stats:
            _append_csv(args.stats, row)
        if args.stats_json:
            detail = dict(row, levels=result.levels, times=result.times, steiner_queries=result.steiner_queries)
            Path(args.stats_json).write_text(json.dumps(detail, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"steinermap: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"objective={result.objective} connectivity={result.connectivity} "
          f"time={result.times['total']:.3f}s")
    return EXIT_OK


def main():
    sys.exit(run())
