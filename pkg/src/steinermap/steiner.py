"""Steiner tree weights of block sets on the target graph.

Terminal sets with at most ``size_limit`` blocks are answered exactly from a
Dreyfus-Wagner table computed once up front.  Larger sets fall back to an MST
over the metric completion (a 2-approximation), cached per block set.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import SizeLimitTooLarge

DEFAULT_SIZE_LIMIT = 4
DEFAULT_MEMORY_BUDGET = 50_000_000  # table entries


def _proper_splits(mask):
    """Submasks E of ``mask`` containing its lowest bit, E != mask."""
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    while True:
        if sub != rest:
            yield sub | low
        if sub == 0:
            break
        sub = (sub - 1) & rest


def mst_weight(dist, nodes):
    """Prim's algorithm on the metric completion induced by ``nodes``.

    ``dist`` may be a numpy matrix or nested lists; the sets handled here are
    small, so plain Python beats per-call numpy overhead.
    """
    nodes = list(nodes)
    if len(nodes) < 2:
        return 0
    if isinstance(dist, np.ndarray):
        dist = dist.tolist()
    first = dist[nodes[0]]
    rest = nodes[1:]
    best = [first[x] for x in rest]
    total = 0
    while rest:
        j = min(range(len(rest)), key=best.__getitem__)
        total += best[j]
        row = dist[rest[j]]
        rest[j] = rest[-1]
        best[j] = best[-1]
        rest.pop()
        best.pop()
        for i, x in enumerate(rest):
            if row[x] < best[i]:
                best[i] = row[x]
    return total


class SteinerTable:
    """Answers ``dist(blocks)`` queries for block bitsets.

    ``stats`` counts exact hits, MST cache hits and MST cache misses.
    """

    def __init__(self, target, size_limit=DEFAULT_SIZE_LIMIT, memory_budget=DEFAULT_MEMORY_BUDGET):
        if size_limit < 2:
            raise ValueError("size_limit must be at least 2")
        self.target = target
        self.k = target.k
        self.dist = target.dist
        self._rows = target.dist.tolist()
        self.size_limit = size_limit
        self._subsets = {}
        self._exact = {}
        self.mst_cache = {}
        self.stats = {"exact": 0, "cache_hit": 0, "cache_miss": 0}
        self._precompute(memory_budget)

    def _precompute(self, memory_budget):
        k, d = self.k, self.dist
        top = min(self.size_limit - 1, k)
        entries = k * sum(comb(k, s) for s in range(1, top + 1))
        if entries > memory_budget:
            raise SizeLimitTooLarge(
                f"{entries} subset entries for k={k}, t={self.size_limit} exceed budget {memory_budget}"
            )
        table = self._subsets
        for x in range(k):
            table[1 << x] = d[x]
        # table[D][v] is the Steiner weight of D + {v}
        for s in range(2, top + 1):
            for combo in combinations(range(k), s):
                mask = 0
                for x in combo:
                    mask |= 1 << x
                split = None
                for sub in _proper_splits(mask):
                    cand = table[sub] + table[mask ^ sub]
                    split = cand if split is None else np.minimum(split, cand)
                table[mask] = (d + split[None, :]).min(axis=1)

    def _exact_weight(self, mask):
        w = self._exact.get(mask)
        if w is None:
            v = mask.bit_length() - 1
            w = self._subsets[mask ^ (1 << v)][v].item()
            self._exact[mask] = w
        return w

    def distance(self, mask):
        """Steiner tree weight of the block set ``mask``; 0 for |mask| <= 1."""
        size = mask.bit_count()
        if size <= 1:
            self.stats["exact"] += 1
            return 0
        if size <= self.size_limit:
            self.stats["exact"] += 1
            return self._exact_weight(mask)
        w = self.mst_cache.get(mask)
        if w is not None:
            self.stats["cache_hit"] += 1
            return w
        self.stats["cache_miss"] += 1
        nodes = [i for i in range(mask.bit_length()) if mask >> i & 1]
        w = mst_weight(self._rows, nodes)
        self.mst_cache[mask] = w
        return w

    def delta(self, before, after):
        """``dist(before) - dist(after)``; positive when ``after`` is cheaper."""
        return self.distance(before) - self.distance(after)

    def reset_stats(self):
        for key in self.stats:
            self.stats[key] = 0

    def query_breakdown(self):
        """Percentages of exact hits, cache hits and cache misses."""
        total = sum(self.stats.values())
        if total == 0:
            return {"exact": 0.0, "cache_hit": 0.0, "cache_miss": 0.0}
        return {key: 100.0 * v / total for key, v in self.stats.items()}


class ConnectivityDistance:
    """``dist(L) = |L| - 1``: the connectivity metric in Steiner clothing.

    Equals the Steiner weight on a complete target graph with unit edges.
    """

    def __init__(self, k):
        self.k = k
        self.stats = {"exact": 0, "cache_hit": 0, "cache_miss": 0}

    def distance(self, mask):
        return mask.bit_count() - 1 if mask else 0

    def delta(self, before, after):
        return self.distance(before) - self.distance(after)

    def reset_stats(self):
        pass

    def query_breakdown(self):
        return {"exact": 100.0, "cache_hit": 0.0, "cache_miss": 0.0}


def precompute_steiner_trees(target, size_limit=DEFAULT_SIZE_LIMIT, memory_budget=DEFAULT_MEMORY_BUDGET):
    return SteinerTable(target, size_limit, memory_budget)


def steiner_distance(table, mask):
    return table.distance(mask)


def delta_dist(table, before, after):
    return table.delta(before, after)
