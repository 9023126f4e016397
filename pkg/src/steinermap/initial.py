"""Initial mapping of the coarsest hypergraph onto the target graph.

A connectivity-optimizing k-way partition is computed first; its blocks are
then contracted into a one-to-one process mapping problem, solved greedily and
polished with Kernighan-Lin pair exchanges.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from .errors import InfeasibleBalance
from .fm import fm_refine
from .lp import lp_refine
from .mapping import Mapping, evaluate_connectivity_metric, max_block_weight
from .steiner import ConnectivityDistance

KL_MAX_PASSES = 8
MAX_GREEDY_SEEDS = 16


def random_balanced_assignment(hg, k, rng):
    """Heaviest-first onto the lightest block, ties shuffled."""
    order = list(range(hg.num_nodes))
    rng.shuffle(order)
    order.sort(key=lambda v: -hg.node_weights[v])
    loads = [0] * k
    blocks = [0] * hg.num_nodes
    tiebreak = list(range(k))
    rng.shuffle(tiebreak)
    for v in order:
        b = min(range(k), key=lambda j: (loads[j], tiebreak[j]))
        blocks[v] = b
        loads[b] += hg.node_weights[v]
    return blocks


def initial_kway_partition(hg, k, epsilon=0.03, reps=4, rng=None):
    """Best of ``reps`` (random balanced start -> LP -> FM) runs on the connectivity metric."""
    rng = rng or random.Random(0)
    limit = max_block_weight(hg.total_weight, k, epsilon)
    if max(hg.node_weights) > limit:
        raise InfeasibleBalance(f"node weight {max(hg.node_weights)} exceeds block limit {limit}")
    metric = ConnectivityDistance(k)
    best = None
    for rep in range(max(1, reps)):
        sub = random.Random(rng.getrandbits(64))
        blocks = random_balanced_assignment(hg, k, sub)
        mp = Mapping(hg, metric, blocks, epsilon)
        if not mp.is_balanced():
            continue
        lp_refine(mp, rng=sub)
        # one node of temporary overload lets FM exchange nodes between full blocks
        fm_refine(mp, rng=sub, slack=max(hg.node_weights))
        score = evaluate_connectivity_metric(hg, mp.block_of)
        if best is None or score < best[0]:
            best = (score, mp.copy_blocks())
    if best is None:
        raise InfeasibleBalance("could not construct a balanced starting partition")
    return best[1]


@dataclass
class OpmpInstance:
    """Block-level hypergraph: node i is block i, nets are the cut nets."""

    k: int
    nets: list
    net_weights: list

    @classmethod
    def from_partition(cls, hg, parts, k):
        merged = {}
        for e in range(hg.num_nets):
            key = tuple(sorted({parts[v] for v in hg.pins(e)}))
            if len(key) > 1:
                merged[key] = merged.get(key, 0) + hg.net_weights[e]
        inst = cls(k, list(merged), list(merged.values()))
        inst.incident = [[] for _ in range(k)]
        for e, pins in enumerate(inst.nets):
            for b in pins:
                inst.incident[b].append(e)
        return inst

    def neighbors(self, u):
        out = set()
        for e in self.incident[u]:
            out.update(self.nets[e])
        out.discard(u)
        return out

    def cost(self, placement, metric):
        dist = metric.distance
        total = 0
        for pins, w in zip(self.nets, self.net_weights):
            mask = 0
            for b in pins:
                mask |= 1 << placement[b]
            total += w * dist(mask)
        return total

    def cost_of_nets(self, nets, placement, metric):
        dist = metric.distance
        total = 0
        for e in nets:
            mask = 0
            for b in self.nets[e]:
                mask |= 1 << placement[b]
            total += self.net_weights[e] * dist(mask)
        return total


def greedy_opmp(inst, target, metric, seed_node):
    """Greedy one-to-one placement grown from ``seed_node``.

    Returns ``placement`` with ``placement[block] = target node``.
    """
    k = inst.k
    placement = [-1] * k
    free = set(range(k))
    dist = metric.distance

    start = min(range(k), key=lambda x: (target.weighted_degree(x), x))
    placement[seed_node] = start
    free.discard(start)

    rating = [0] * k
    net_touched = [False] * len(inst.nets)
    heap = []

    def touch(u):
        for e in inst.incident[u]:
            if net_touched[e]:
                continue
            net_touched[e] = True
            for v in inst.nets[e]:
                if placement[v] < 0:
                    rating[v] += inst.net_weights[e]
                    heapq.heappush(heap, (-rating[v], v))

    touch(seed_node)
    while heap:
        neg, u = heapq.heappop(heap)
        if placement[u] >= 0 or -neg != rating[u]:
            continue
        best, best_cost = None, None
        for j in sorted(free):
            cost = 0
            for e in inst.incident[u]:
                mask = 0
                for v in inst.nets[e]:
                    if placement[v] >= 0:
                        mask |= 1 << placement[v]
                if mask:
                    cost += inst.net_weights[e] * (dist(mask | (1 << j)) - dist(mask))
            if best_cost is None or cost < best_cost:
                best, best_cost = j, cost
        placement[u] = best
        free.discard(best)
        touch(u)

    remaining = sorted(free)
    for u in range(k):
        if placement[u] < 0:
            placement[u] = remaining.pop(0)
    return placement


class _PlacementState:
    """Per-net target masks and costs of a placement, kept current under swaps."""

    def __init__(self, inst, placement, metric):
        self.inst = inst
        self.placement = placement
        self.dist = metric.distance
        self.masks = []
        self.costs = []
        for pins, w in zip(inst.nets, inst.net_weights):
            mask = 0
            for b in pins:
                mask |= 1 << placement[b]
            self.masks.append(mask)
            self.costs.append(w * self.dist(mask))
        self.incident = [frozenset(x) for x in inst.incident]

    def _changed(self, u, v):
        # nets holding both blocks keep their target set under the exchange
        return self.incident[u] ^ self.incident[v]

    def swap_gain(self, u, v):
        pu, pv = self.placement[u], self.placement[v]
        flip = (1 << pu) | (1 << pv)
        weights = self.inst.net_weights
        gain = 0
        for e in self._changed(u, v):
            gain += self.costs[e] - weights[e] * self.dist(self.masks[e] ^ flip)
        return gain

    def swap(self, u, v):
        pu, pv = self.placement[u], self.placement[v]
        flip = (1 << pu) | (1 << pv)
        weights = self.inst.net_weights
        for e in self._changed(u, v):
            self.masks[e] ^= flip
            self.costs[e] = weights[e] * self.dist(self.masks[e])
        self.placement[u], self.placement[v] = pv, pu


def _swap_gain(inst, placement, metric, u, v):
    return _PlacementState(inst, list(placement), metric).swap_gain(u, v)


def kl_refine(inst, placement, metric, max_passes=KL_MAX_PASSES):
    """Pair-exchange local search with lazy gain updates; returns a new placement.

    Each pass applies exchanges in best-gain order (worsening ones included),
    moves every block at most once and rolls back to the best prefix.
    """
    state = _PlacementState(inst, list(placement), metric)
    k = inst.k
    for _ in range(max_passes):
        heap = [(-state.swap_gain(u, v), u, v) for u in range(k) for v in range(u + 1, k)]
        heapq.heapify(heap)
        moved = [False] * k
        history = []
        cum = best = 0
        best_len = 0
        while heap:
            neg, u, v = heapq.heappop(heap)
            if moved[u] or moved[v]:
                continue
            g = state.swap_gain(u, v)
            if g != -neg:
                heapq.heappush(heap, (-g, u, v))
                continue
            state.swap(u, v)
            moved[u] = moved[v] = True
            history.append((u, v))
            cum += g
            if cum > best:
                best, best_len = cum, len(history)
        for u, v in reversed(history[best_len:]):
            state.swap(u, v)
        if best <= 0:
            break
    return state.placement


def initial_mapping(hg, target, metric, epsilon=0.03, reps=4, rng=None, greedy_seeds=None):
    """Partition, contract to OPMP, greedy + KL from several seeds; best result wins."""
    rng = rng or random.Random(0)
    k = target.k
    parts = initial_kway_partition(hg, k, epsilon, reps, rng)
    return map_partition(hg, parts, target, metric, rng, greedy_seeds)


def map_partition(hg, parts, target, metric, rng=None, greedy_seeds=None):
    """Place the blocks of ``parts`` onto target nodes; returns node -> target."""
    rng = rng or random.Random(0)
    k = target.k
    inst = OpmpInstance.from_partition(hg, parts, k)
    if greedy_seeds is None:
        greedy_seeds = min(k, MAX_GREEDY_SEEDS)
    seeds = sorted(rng.sample(range(k), min(greedy_seeds, k)))
    best = None
    for seed in seeds:
        placement = greedy_opmp(inst, target, metric, seed)
        placement = kl_refine(inst, placement, metric)
        cost = inst.cost(placement, metric)
        if best is None or cost < best[0]:
            best = (cost, placement)
    placement = best[1]
    return [placement[p] for p in parts]
