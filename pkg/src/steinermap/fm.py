"""Localized multi-try FM refinement backed by the gain table."""

from __future__ import annotations

import heapq
import random
from collections import deque

from .gains import GainTable

MAX_ROUNDS = 10
SEED_BATCH = 25
STOP_WINDOW = 350
MIN_STOP_WINDOW = 25


def stop_window(n):
    """Moves without a new best prefix after which a search gives up."""
    return min(STOP_WINDOW, max(MIN_STOP_WINDOW, n // 100))


def _localized_search(mapping, gt, seeds, locked, window, log, slack=0):
    """One localized FM search; returns the improvement it kept.

    Every node it moves is added to ``locked``.  Moves past the best prefix
    are rolled back before returning.  With ``slack`` > 0 a move may overload
    its target block by up to ``slack``; only balanced prefixes are kept.
    """
    hg = mapping.hypergraph
    if slack:
        bw, limit, nw = mapping.block_weights, mapping.max_weight + slack, hg.node_weights

        def fits(u, to):
            return bw[to] + nw[u] <= limit
    else:
        fits = mapping.fits
    heap = []
    for u in seeds:
        to, g = gt.best_move(u, fits)
        if to >= 0:
            heapq.heappush(heap, (-g, u, to))

    moves = []
    cum = best = 0
    best_len = 0
    while heap:
        neg, u, to = heapq.heappop(heap)
        if u in locked:
            continue
        cur_to, cur_g = gt.best_move(u, fits)
        if cur_to < 0:
            continue
        if (cur_to, cur_g) != (to, -neg):
            heapq.heappush(heap, (-cur_g, u, cur_to))
            continue
        frm = mapping.block_of[u]
        gain = mapping.move(u, to)
        gt.update(u, frm, to)
        locked.add(u)
        moves.append((u, frm, to))
        cum += gain
        if cum > best and (not slack or mapping.is_balanced()):
            best, best_len = cum, len(moves)
        elif len(moves) - best_len >= window:
            break
        touched = set()
        for e in hg.incident_nets(u):
            touched.update(hg.pins(e))
        for v in sorted(touched):
            if v in locked:
                continue
            vt, vg = gt.best_move(v, fits)
            if vt >= 0:
                heapq.heappush(heap, (-vg, v, vt))

    tail = moves[best_len:]
    if len(tail) > hg.num_nodes // 2:
        for u, frm, to in reversed(tail):
            mapping.move(u, frm)
        gt.rebuild()
    else:
        for u, frm, to in reversed(tail):
            mapping.move(u, frm)
            gt.update(u, to, frm)
    if log is not None:
        log.append((moves[:best_len], best))
    return best


def fm_refine(mapping, gain_table=None, max_rounds=MAX_ROUNDS, rng=None, seed_batch=SEED_BATCH, log=None,
              slack=0):
    """Run localized multi-try FM in place; returns the total improvement.

    Each round queues all boundary nodes and launches searches from batches
    of ``seed_batch`` seeds until the queue drains.  Every node moves at most
    once per round.  ``slack`` relaxes the per-move balance check as in
    :func:`_localized_search`; the result is balanced either way.
    """
    rng = rng or random.Random(0)
    gt = gain_table if gain_table is not None else GainTable(mapping)
    window = stop_window(mapping.hypergraph.num_nodes)
    total = 0
    for _ in range(max_rounds):
        boundary = mapping.boundary_nodes()
        rng.shuffle(boundary)
        queue = deque(boundary)
        locked = set()
        improvement = 0
        while queue:
            seeds = []
            while queue and len(seeds) < seed_batch:
                u = queue.popleft()
                if u not in locked:
                    seeds.append(u)
            if seeds:
                improvement += _localized_search(mapping, gt, seeds, locked, window, log, slack)
        total += improvement
        if improvement <= 0:
            break
    return total
