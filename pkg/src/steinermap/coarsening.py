"""Multilevel coarsening by heavy-edge clustering and contraction."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .hypergraph import Hypergraph, contract, dense_cluster_ids

CONTRACTION_LIMIT_FACTOR = 160
MIN_SHRINK = 0.01


def default_cluster_cap(total_weight, k, epsilon):
    return math.ceil(total_weight / k) * (1 + epsilon) / 3


def compute_clustering(hg: Hypergraph, cap=math.inf, rng=None):
    """Heavy-edge clustering.

    Nodes are visited in shuffled order; a still-singleton node joins the
    cluster with the highest rating sum(w(e) / (|e| - 1)) over shared nets,
    provided the joined weight stays within ``cap``.  Ties go to the smallest
    cluster id.  Returns dense cluster ids.
    """
    rng = rng or random.Random(0)
    n = hg.num_nodes
    cluster = list(range(n))
    weight = list(hg.node_weights)
    size = [1] * n
    order = list(range(n))
    rng.shuffle(order)
    for u in order:
        if size[cluster[u]] > 1:
            continue
        ratings = {}
        for e in hg.incident_nets(u):
            pins = hg.pins(e)
            if len(pins) < 2:
                continue
            r = hg.net_weights[e] / (len(pins) - 1)
            for c in {cluster[v] for v in pins if v != u}:
                ratings[c] = ratings.get(c, 0) + r
        own = cluster[u]
        best, best_rating = None, 0
        w_u = hg.node_weights[u]
        for c in sorted(ratings):
            r = ratings[c]
            if c == own or r <= 0 or weight[c] + w_u > cap:
                continue
            if r > best_rating:
                best, best_rating = c, r
        if best is not None:
            cluster[u] = best
            weight[best] += w_u
            weight[own] -= w_u
            size[best] += 1
            size[own] -= 1
    return dense_cluster_ids(cluster)[0]


@dataclass
class Hierarchy:
    """``hypergraphs[i + 1] == contract(hypergraphs[i], maps[i])``."""

    hypergraphs: list = field(default_factory=list)
    maps: list = field(default_factory=list)

    @property
    def coarsest(self):
        return self.hypergraphs[-1]

    def __len__(self):
        return len(self.hypergraphs)


def coarsen(hg: Hypergraph, limit, cap=math.inf, rng=None) -> Hierarchy:
    rng = rng or random.Random(0)
    levels = Hierarchy([hg], [])
    current = hg
    while current.num_nodes > limit:
        clusters = compute_clustering(current, cap, rng)
        coarse = contract(current, clusters)
        if coarse.num_nodes > current.num_nodes * (1 - MIN_SHRINK):
            break
        levels.hypergraphs.append(coarse)
        levels.maps.append(clusters)
        current = coarse
    return levels
