"""Exhaustive reference oracles for testing.

Nothing here touches the production Steiner table, the shortest-path code in
:mod:`steinermap.hypergraph` or the mapping data structure: distances come
from a local Floyd-Warshall and trees from a local Kruskal.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .errors import TooLarge

STEINER_ENUM_LIMIT = 12
MAPPING_ENUM_LIMIT = 10**7


def floyd_warshall(k, edges):
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(k)] for i in range(k)]
    for u, v, w in edges:
        if w < d[u][v]:
            d[u][v] = d[v][u] = w
    for m in range(k):
        dm = d[m]
        for i in range(k):
            dim = d[i][m]
            if dim == inf:
                continue
            di = d[i]
            for j in range(k):
                if dim + dm[j] < di[j]:
                    di[j] = dim + dm[j]
    return d


def kruskal_weight(nodes, d):
    nodes = list(nodes)
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0
    for w, a, b in sorted((d[a][b], a, b) for a, b in combinations(nodes, 2)):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            total += w
    return total


def _steiner_by_supersets(k, d, terminals):
    others = [x for x in range(k) if x not in terminals]
    best = float("inf")
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            best = min(best, kruskal_weight(list(terminals) + list(extra), d))
    return best


def _steiner_by_topology(d, terminals):
    """Exact Steiner weight for at most 4 terminals by Steiner-point enumeration."""
    dm = np.asarray(d, dtype=float)
    ts = list(terminals)
    if len(ts) <= 1:
        return 0
    if len(ts) == 2:
        return d[ts[0]][ts[1]]
    if len(ts) == 3:
        return (dm[ts[0]] + dm[ts[1]] + dm[ts[2]]).min()
    if len(ts) == 4:
        a, b, c, e = ts
        best = float("inf")
        for (p, q), (r, s) in (((a, b), (c, e)), ((a, c), (b, e)), ((a, e), (b, c))):
            left = dm[p] + dm[q]
            right = dm[r] + dm[s]
            best = min(best, (left[:, None] + dm + right[None, :]).min())
        return best
    raise TooLarge("topology enumeration handles at most 4 terminals")


def _clean(x):
    return int(x) if float(x).is_integer() else float(x)


def brute_force_steiner(target, terminals, limit=STEINER_ENUM_LIMIT, _d=None):
    """Optimal Steiner tree weight: min over Steiner point sets of an MST."""
    k = target.k
    if k > limit:
        raise TooLarge(f"k={k} above enumeration bound {limit}")
    d = _d if _d is not None else floyd_warshall(k, target.edges)
    terminals = sorted(set(terminals))
    if len(terminals) <= 1:
        return 0
    return _clean(_steiner_by_supersets(k, d, terminals))


class ReferenceDistance:
    """Independent ``dist`` used by the audits.

    Sets with at most ``size_limit`` blocks are solved exactly (superset
    enumeration for small k, Steiner-point enumeration otherwise); larger sets
    get the MST of the metric completion, computed with Kruskal.
    """

    def __init__(self, target, size_limit=None):
        self.target = target
        self.k = target.k
        self.size_limit = self.k if size_limit is None else size_limit
        self.d = floyd_warshall(self.k, target.edges)
        self._memo = {}

    def __call__(self, blocks):
        key = tuple(sorted(set(blocks)))
        if key not in self._memo:
            self._memo[key] = self._solve(key)
        return self._memo[key]

    def _solve(self, ts):
        if len(ts) <= 1:
            return 0
        if len(ts) > self.size_limit:
            return _clean(kruskal_weight(ts, self.d))
        if self.k <= STEINER_ENUM_LIMIT:
            return _clean(_steiner_by_supersets(self.k, self.d, ts))
        return _clean(_steiner_by_topology(self.d, ts))


def independent_objective(hg, target, blocks, size_limit=None, reference=None):
    ref = reference or ReferenceDistance(target, size_limit)
    total = 0
    for e in range(hg.num_nets):
        lam = {blocks[v] for v in hg.pins(e)}
        if len(lam) > 1:
            total += ref(lam) * hg.net_weights[e]
    return total


def brute_force_mapping(hg, target, epsilon=0.03, limit=MAPPING_ENUM_LIMIT, size_limit=None, chunk=1 << 18):
    """Globally optimal balanced mapping by enumerating all k**n assignments.

    Returns ``(blocks, objective)``; ``(None, None)`` if nothing is balanced.
    """
    k, n = target.k, hg.num_nodes
    if k ** n > limit or k > STEINER_ENUM_LIMIT:
        raise TooLarge(f"{k}**{n} assignments above bound {limit}")
    ref = ReferenceDistance(target, size_limit)
    cost_of_mask = np.zeros(1 << k, dtype=float)
    for mask in range(1, 1 << k):
        cost_of_mask[mask] = ref([b for b in range(k) if mask >> b & 1])
    lmax = (1 + epsilon) * math.ceil(hg.total_weight / k)
    node_w = np.asarray(hg.node_weights, dtype=float)
    net_w = np.asarray(hg.net_weights, dtype=float)

    best_cost, best_index = None, None
    total = k ** n
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        assign = (idx[:, None] // powers[None, :]) % k  # rows are base-k digits
        loads = np.zeros((len(idx), k))
        for b in range(k):
            loads[:, b] = ((assign == b) * node_w[None, :]).sum(axis=1)
        ok = (loads <= lmax).all(axis=1)
        if not ok.any():
            continue
        cost = np.zeros(len(idx))
        bits = np.left_shift(np.int64(1), assign)
        for e in range(hg.num_nets):
            mask = np.zeros(len(idx), dtype=np.int64)
            for v in hg.pins(e):
                mask |= bits[:, v]
            cost += cost_of_mask[mask] * net_w[e]
        cost[~ok] = np.inf
        j = int(np.argmin(cost))
        if best_cost is None or cost[j] < best_cost:
            best_cost, best_index = cost[j], idx[j]
    if best_cost is None:
        return None, None
    blocks = [int(x) for x in (best_index // powers) % k]
    return blocks, _clean(best_cost)
