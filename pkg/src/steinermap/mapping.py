"""Mutable k-way mapping with pin counts, connectivity sets and block weights."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .errors import InvalidBlock

DENSE_PIN_COUNT_LIMIT = 4_000_000


def max_block_weight(total_weight, k, epsilon):
    """``(1 + eps) * ceil(c(V) / k)``."""
    return (1 + epsilon) * math.ceil(total_weight / k)


@dataclass
class MoveResult:
    gain: object
    reverted: bool = False


class Mapping:
    """Assignment of hypergraph nodes to target nodes (blocks).

    ``metric`` is anything with ``k`` and ``distance(mask)``: a
    :class:`~steinermap.steiner.SteinerTable` or a
    :class:`~steinermap.steiner.ConnectivityDistance`.
    """

    def __init__(self, hypergraph, metric, blocks, epsilon=0.03, dense=None):
        self.hypergraph = hg = hypergraph
        self.metric = metric
        self.k = k = metric.k
        self.epsilon = epsilon
        self.max_weight = max_block_weight(hg.total_weight, k, epsilon)
        blocks = [int(b) for b in blocks]
        if len(blocks) != hg.num_nodes:
            raise ValueError("mapping must assign every node")
        for b in blocks:
            if not 0 <= b < k:
                raise InvalidBlock(f"block {b} outside [0, {k})")
        if dense is None:
            dense = hg.num_nets * k <= DENSE_PIN_COUNT_LIMIT
        self.dense = dense
        self.block_of = blocks
        self._rebuild()

    def _rebuild(self):
        hg, k = self.hypergraph, self.k
        self.block_weights = [0] * k
        for v, b in enumerate(self.block_of):
            self.block_weights[b] += hg.node_weights[v]
        self.pin_counts = []
        self.connectivity = []
        for e in range(hg.num_nets):
            pc = [0] * k if self.dense else defaultdict(int)
            mask = 0
            for v in hg.pins(e):
                b = self.block_of[v]
                pc[b] += 1
                mask |= 1 << b
            self.pin_counts.append(pc)
            self.connectivity.append(mask)

    def copy_blocks(self):
        return list(self.block_of)

    def pin_count(self, e, b):
        return self.pin_counts[e][b]

    def connectivity_count(self, e):
        return self.connectivity[e].bit_count()

    def adjacent_blocks(self, u):
        """R(u) as a bitset: union of the connectivity sets of u's nets."""
        mask = 1 << self.block_of[u]
        for e in self.hypergraph.incident_nets(u):
            mask |= self.connectivity[e]
        return mask

    def is_boundary(self, u):
        own = 1 << self.block_of[u]
        return any(self.connectivity[e] != own for e in self.hypergraph.incident_nets(u))

    def boundary_nodes(self):
        return [u for u in range(self.hypergraph.num_nodes) if self.is_boundary(u)]

    def fits(self, u, to):
        return self.block_weights[to] + self.hypergraph.node_weights[u] <= self.max_weight

    def is_balanced(self):
        return all(w <= self.max_weight for w in self.block_weights)

    def move(self, u, to):
        """Move ``u`` to block ``to`` and return the attributed gain.

        The gain is accumulated net by net from the actual pin-count
        transitions, so it reflects exactly what the data structure saw.
        """
        if not 0 <= to < self.k:
            raise InvalidBlock(f"block {to} outside [0, {self.k})")
        frm = self.block_of[u]
        if frm == to:
            raise ValueError("node already in target block")
        hg = self.hypergraph
        dist = self.metric.distance
        weights = hg.net_weights
        w_u = hg.node_weights[u]
        self.block_of[u] = to
        self.block_weights[frm] -= w_u
        self.block_weights[to] += w_u
        fbit, tbit = 1 << frm, 1 << to
        gain = 0
        for e in hg.incident_nets(u):
            pc = self.pin_counts[e]
            pc[frm] -= 1
            pc[to] += 1
            before = lam = self.connectivity[e]
            if pc[frm] == 0:
                lam &= ~fbit
            if pc[to] == 1:
                lam |= tbit
            if lam != before:
                self.connectivity[e] = lam
                gain += weights[e] * (dist(before) - dist(lam))
        return gain

    def apply_move(self, u, to, revert_if_negative=False):
        frm = self.block_of[u]
        gain = self.move(u, to)
        if revert_if_negative and gain < 0:
            self.move(u, frm)
            return MoveResult(gain, True)
        return MoveResult(gain, False)

    def objective(self):
        return evaluate_steiner_metric(self.hypergraph, self.metric, self.block_of)

    def audit(self):
        """Compare incremental state against a from-scratch rebuild."""
        snapshot = (list(self.block_weights), [self.pin_counts_of(e) for e in range(self.hypergraph.num_nets)], list(self.connectivity))
        fresh = Mapping(self.hypergraph, self.metric, self.block_of, self.epsilon, self.dense)
        expected = (fresh.block_weights, [fresh.pin_counts_of(e) for e in range(self.hypergraph.num_nets)], fresh.connectivity)
        return snapshot == expected

    def pin_counts_of(self, e):
        pc = self.pin_counts[e]
        return tuple(pc[b] for b in range(self.k))


def evaluate_steiner_metric(hg, metric, blocks):
    """Sum over nets of dist(connectivity set) * net weight, from scratch."""
    dist = metric.distance
    total = 0
    for e in range(hg.num_nets):
        mask = 0
        for v in hg.pins(e):
            mask |= 1 << blocks[v]
        if mask & (mask - 1):
            total += dist(mask) * hg.net_weights[e]
    return total


def _connectivities(hg, blocks):
    for e in range(hg.num_nets):
        yield e, len({blocks[v] for v in hg.pins(e)})


def evaluate_connectivity_metric(hg, blocks):
    return sum((lam - 1) * hg.net_weights[e] for e, lam in _connectivities(hg, blocks) if lam > 1)


def evaluate_cut_metric(hg, blocks):
    return sum(hg.net_weights[e] for e, lam in _connectivities(hg, blocks) if lam > 1)


def block_weights_of(hg, blocks, k):
    weights = [0] * k
    for v, b in enumerate(blocks):
        weights[b] += hg.node_weights[v]
    return weights


def is_balanced(hg, blocks, k, epsilon):
    limit = max_block_weight(hg.total_weight, k, epsilon)
    return all(w <= limit for w in block_weights_of(hg, blocks, k))
