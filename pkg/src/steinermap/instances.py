"""Random instance generators used by tests, demos and the benchmark harness."""

from __future__ import annotations

import random

from .hypergraph import Hypergraph, TargetGraph


def random_hypergraph(n, m, rng=None, max_net_size=5, large_net_prob=0.0, large_net_size=12,
                      node_weights=(1, 1), net_weights=(1, 1)):
    """Hypergraph with ``m`` nets of 2..``max_net_size`` random pins.

    With probability ``large_net_prob`` a net instead gets up to
    ``large_net_size`` pins.  Every node is guaranteed at least one net.
    """
    rng = rng or random.Random(0)
    nets = []
    for _ in range(m):
        hi = large_net_size if rng.random() < large_net_prob else max_net_size
        size = rng.randint(2, max(2, min(hi, n)))
        nets.append(rng.sample(range(n), size))
    covered = {v for net in nets for v in net}
    for v in range(n):
        if v not in covered and n > 1:
            nets.append([v, rng.choice([x for x in range(n) if x != v])])
    return Hypergraph(
        nets,
        n,
        [rng.randint(*node_weights) for _ in range(n)],
        [rng.randint(*net_weights) for _ in range(len(nets))],
    )


def random_graph(n, m, rng=None, net_weights=(1, 1)):
    """Simple graph as a hypergraph whose nets all have two pins."""
    rng = rng or random.Random(0)
    edges = set()
    target = min(m, n * (n - 1) // 2)
    while len(edges) < target:
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    edges = sorted(edges)
    return Hypergraph([list(e) for e in edges], n, None, [rng.randint(*net_weights) for _ in edges])


def random_target(k, extra_edges=None, rng=None, weights=(1, 10)):
    """Connected target: a random spanning tree plus some extra edges."""
    rng = rng or random.Random(0)
    order = list(range(k))
    rng.shuffle(order)
    edges = {}
    for i in range(1, k):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.randint(*weights)
    if extra_edges is None:
        extra_edges = rng.randint(0, k)
    for _ in range(extra_edges):
        if k < 2:
            break
        u, v = rng.sample(range(k), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.randint(*weights))
    return TargetGraph(k, [(u, v, w) for (u, v), w in edges.items()])
