"""Multilevel mapping driver: coarsen, map the coarsest level, refine upwards."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .coarsening import CONTRACTION_LIMIT_FACTOR, coarsen, default_cluster_cap
from .errors import InfeasibleBalance
from .flows import flow_refine
from .fm import MAX_ROUNDS, fm_refine
from .gains import GainTable
from .hypergraph import project
from .initial import initial_kway_partition, initial_mapping, map_partition
from .lp import DEFAULT_ROUNDS, lp_refine
from .mapping import Mapping, evaluate_connectivity_metric, evaluate_steiner_metric
from .steiner import DEFAULT_SIZE_LIMIT, ConnectivityDistance, SteinerTable

QUALITY_MIN_RELATIVE_GAIN = 0.0025
QUALITY_MAX_ITERATIONS = 10
PHASES = ("coarsen", "initial", "lp", "fm", "flow")


@dataclass
class Config:
    epsilon: float = 0.03
    seed: int = 0
    preset: str = "default"  # or "quality"
    mode: str = "direct"  # or "two-phase"
    objective: str = "steiner"  # or "connectivity"
    size_limit: int = DEFAULT_SIZE_LIMIT
    time_limit: float | None = None
    contraction_factor: int = CONTRACTION_LIMIT_FACTOR
    initial_reps: int = 4
    greedy_seeds: int | None = None
    lp_rounds: int = DEFAULT_ROUNDS
    fm_rounds: int = MAX_ROUNDS
    flow_alpha: float = 1.0

    def validate(self):
        if self.preset not in ("default", "quality"):
            raise ValueError(f"unknown preset {self.preset!r}")
        if self.mode not in ("direct", "two-phase"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.objective not in ("steiner", "connectivity"):
            raise ValueError(f"unknown objective {self.objective!r}")
        if not 0 <= self.epsilon:
            raise ValueError("epsilon must be non-negative")
        if self.size_limit < 2:
            raise ValueError("steiner size limit must be at least 2")


@dataclass
class Result:
    blocks: list
    objective: object
    connectivity: object
    times: dict = field(default_factory=dict)
    steiner_queries: dict = field(default_factory=dict)
    levels: int = 1


def make_metric(target, config):
    if config.objective == "connectivity":
        return ConnectivityDistance(target.k)
    return SteinerTable(target, config.size_limit)


class _Clock:
    def __init__(self, limit):
        self.start = time.perf_counter()
        self.limit = limit
        self.times = {p: 0.0 for p in PHASES}

    def expired(self):
        return self.limit is not None and time.perf_counter() - self.start > self.limit

    def timed(self, phase, fn, *args, **kwargs):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        self.times[phase] += time.perf_counter() - t
        return out


def refine_level(mapping, config, rng, clock):
    """Run the refiners on one level; returns the total improvement."""
    gt = GainTable(mapping)
    quality = config.preset == "quality"
    total = 0
    for _ in range(QUALITY_MAX_ITERATIONS if quality else 1):
        if clock.expired():
            break
        start = evaluate_steiner_metric(mapping.hypergraph, mapping.metric, mapping.block_of)
        gained = clock.timed("lp", lp_refine, mapping, config.lp_rounds, rng, gt)
        if not clock.expired():
            gained += clock.timed("fm", fm_refine, mapping, gt, config.fm_rounds, rng)
        if quality and not clock.expired():
            gained += clock.timed("flow", flow_refine, mapping, gt, config.flow_alpha)
        total += gained
        if not quality or start == 0 or gained / start < QUALITY_MIN_RELATIVE_GAIN:
            break
    return total


def _initial_on_hierarchy(levels, target, metric, config, rng):
    """Map the coarsest level that admits a balanced mapping."""
    for i in range(len(levels) - 1, -1, -1):
        try:
            blocks = initial_mapping(levels.hypergraphs[i], target, metric, config.epsilon,
                                     config.initial_reps, rng, config.greedy_seeds)
        except InfeasibleBalance:
            if i == 0:
                raise
            continue
        return i, blocks
    raise InfeasibleBalance("no level admits a balanced initial mapping")


def map_hypergraph(hg, target, config=None, metric=None) -> Result:
    config = config or Config()
    config.validate()
    if metric is None:
        metric = make_metric(target, config)
    metric.reset_stats()
    rng = random.Random(config.seed)
    clock = _Clock(config.time_limit)
    k = target.k

    if config.mode == "two-phase":
        def two_phase():
            parts = initial_kway_partition(hg, k, config.epsilon, config.initial_reps, rng)
            return map_partition(hg, parts, target, metric, rng, config.greedy_seeds)

        blocks = clock.timed("initial", two_phase)
        n_levels = 1
    else:
        limit = max(config.contraction_factor * k, k)
        cap = default_cluster_cap(hg.total_weight, k, config.epsilon)
        levels = clock.timed("coarsen", coarsen, hg, limit, cap, rng)
        start, blocks = clock.timed("initial", _initial_on_hierarchy, levels, target, metric, config, rng)
        n_levels = len(levels)
        for i in range(start, -1, -1):
            if i < start:
                blocks = project(blocks, levels.maps[i])
            mapping = Mapping(levels.hypergraphs[i], metric, blocks, config.epsilon)
            if not clock.expired():
                refine_level(mapping, config, rng, clock)
            blocks = mapping.block_of

    mapping = Mapping(hg, metric, blocks, config.epsilon)
    if not mapping.is_balanced():
        raise InfeasibleBalance("final mapping violates the balance constraint")
    objective = evaluate_steiner_metric(hg, metric, blocks)
    times = dict(clock.times)
    times["total"] = time.perf_counter() - clock.start
    return Result(list(blocks), objective, evaluate_connectivity_metric(hg, blocks), times,
                  metric.query_breakdown(), n_levels)
