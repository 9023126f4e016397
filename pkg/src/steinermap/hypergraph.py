"""Immutable hypergraph and target graph, plus contraction and projection."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DisconnectedTarget


def _as_number(x):
    """Collapse integral values to ``int`` so weight arithmetic stays exact."""
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    return int(x) if x.is_integer() else x


class Hypergraph:
    """Weighted hypergraph in incidence form.

    ``nets`` is a sequence of pin sequences.  Duplicate pins inside a net are
    dropped.  Node and net weights default to 1.
    """

    def __init__(self, nets, num_nodes=None, node_weights=None, net_weights=None):
        pins = []
        for i, net in enumerate(nets):
            seen = tuple(dict.fromkeys(int(v) for v in net))
            if not seen:
                raise ValueError(f"net {i} is empty")
            pins.append(seen)
        if num_nodes is None:
            num_nodes = 1 + max((max(p) for p in pins), default=-1)
        n = int(num_nodes)
        for i, p in enumerate(pins):
            if min(p) < 0 or max(p) >= n:
                raise ValueError(f"net {i} has a pin outside [0, {n})")

        if node_weights is None:
            node_weights = [1] * n
        if net_weights is None:
            net_weights = [1] * len(pins)
        node_weights = [_as_number(w) for w in node_weights]
        net_weights = [_as_number(w) for w in net_weights]
        if len(node_weights) != n or len(net_weights) != len(pins):
            raise ValueError("weight vector length does not match")
        if any(w <= 0 for w in node_weights) or any(w <= 0 for w in net_weights):
            raise ValueError("weights must be positive")

        incident = [[] for _ in range(n)]
        for e, p in enumerate(pins):
            for v in p:
                incident[v].append(e)

        self._pins = pins
        self._incident = [tuple(x) for x in incident]
        self.node_weights = tuple(node_weights)
        self.net_weights = tuple(net_weights)
        self.total_weight = sum(node_weights)

    @property
    def num_nodes(self) -> int:
        return len(self._incident)

    @property
    def num_nets(self) -> int:
        return len(self._pins)

    @property
    def num_pins(self) -> int:
        return sum(len(p) for p in self._pins)

    n = num_nodes
    m = num_nets

    def pins(self, e) -> tuple:
        return self._pins[e]

    def incident_nets(self, u) -> tuple:
        return self._incident[u]

    def net_size(self, e) -> int:
        return len(self._pins[e])

    def degree(self, u) -> int:
        return len(self._incident[u])

    def nets(self):
        return list(self._pins)

    def neighbors(self, u):
        out = set()
        for e in self._incident[u]:
            out.update(self._pins[e])
        out.discard(u)
        return sorted(out)

    def incidence_arrays(self):
        """Return ``(net_offsets, pin_array, node_offsets, net_array)``."""
        net_off = np.zeros(self.num_nets + 1, dtype=np.int64)
        net_off[1:] = np.cumsum([len(p) for p in self._pins])
        pin_arr = np.fromiter((v for p in self._pins for v in p), dtype=np.int64, count=int(net_off[-1]))
        node_off = np.zeros(self.num_nodes + 1, dtype=np.int64)
        node_off[1:] = np.cumsum([len(x) for x in self._incident])
        net_arr = np.fromiter((e for x in self._incident for e in x), dtype=np.int64, count=int(node_off[-1]))
        return net_off, pin_arr, node_off, net_arr

    def is_graph(self) -> bool:
        return all(len(p) == 2 for p in self._pins)

    def __repr__(self):
        return f"Hypergraph(n={self.num_nodes}, m={self.num_nets}, p={self.num_pins})"


def dense_cluster_ids(cluster_of):
    """Relabel arbitrary cluster labels to ``0..n'-1`` by first appearance."""
    relabel = {}
    out = []
    for c in cluster_of:
        out.append(relabel.setdefault(c, len(relabel)))
    return out, len(relabel)


def contract(hg: Hypergraph, cluster_of) -> Hypergraph:
    """Contract each cluster into a supernode.

    Pins are mapped to their supernode, single-pin nets are removed and
    identical nets are merged with summed weights.
    """
    cluster_of = list(cluster_of)
    if len(cluster_of) != hg.num_nodes:
        raise ValueError("cluster map must cover every node")
    n_coarse = max(cluster_of, default=-1) + 1
    if sorted(set(cluster_of)) != list(range(n_coarse)):
        raise ValueError("cluster ids must be dense in [0, n')")

    weights = [0] * n_coarse
    for v, c in enumerate(cluster_of):
        weights[c] += hg.node_weights[v]

    merged = {}
    for e, p in enumerate(hg._pins):
        key = tuple(sorted({cluster_of[v] for v in p}))
        if len(key) < 2:
            continue
        merged[key] = merged.get(key, 0) + hg.net_weights[e]
    return Hypergraph(list(merged), n_coarse, weights, list(merged.values()))


def project(coarse_blocks, cluster_of):
    """Carry a coarse assignment back to the finer hypergraph."""
    return [coarse_blocks[c] for c in cluster_of]


def all_pairs_shortest_paths(k, edges):
    """Exact ``k x k`` shortest-path distances of an undirected weighted graph.

    Parallel edges keep the lighter weight.  Integral inputs yield an int64
    matrix.
    """
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    best = {}
    integral = True
    for u, v, w in edges:
        if u == v:
            continue
        w = _as_number(w)
        if w <= 0:
            raise ValueError("edge weights must be positive")
        integral &= isinstance(w, int)
        key = (min(u, v), max(u, v))
        if key not in best or w < best[key]:
            best[key] = w
    rows = [a for a, b in best] + [b for a, b in best]
    cols = [b for a, b in best] + [a for a, b in best]
    vals = list(best.values()) * 2
    graph = csr_matrix((np.asarray(vals, dtype=np.float64), (rows, cols)), shape=(k, k))
    dist = shortest_path(graph, method="D", directed=False)
    if not np.all(np.isfinite(dist)):
        raise DisconnectedTarget("target graph is not connected")
    if integral:
        return np.rint(dist).astype(np.int64)
    return dist


class TargetGraph:
    """Weighted undirected target graph with its all-pairs distance table."""

    def __init__(self, k, edges):
        self.k = int(k)
        clean = {}
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.k and 0 <= v < self.k):
                raise ValueError(f"edge ({u}, {v}) outside [0, {self.k})")
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            w = _as_number(w)
            if key not in clean or w < clean[key]:
                clean[key] = w
        self.edges = tuple((u, v, w) for (u, v), w in sorted(clean.items()))
        self.dist = all_pairs_shortest_paths(self.k, self.edges)
        self.dist.setflags(write=False)

    def weighted_degree(self, u):
        return sum(w for a, b, w in self.edges if u in (a, b))

    def distance(self, u, v):
        return self.dist[u, v].item()

    def __repr__(self):
        return f"TargetGraph(k={self.k}, edges={len(self.edges)})"


def complete_target(k, weight=1) -> TargetGraph:
    return TargetGraph(k, [(u, v, weight) for u in range(k) for v in range(u + 1, k)])
