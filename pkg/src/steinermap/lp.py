"""Label propagation refinement: greedy positive-gain moves over boundary nodes."""

from __future__ import annotations

import random

from .blocksets import iter_blocks
from .gains import compute_gain

DEFAULT_ROUNDS = 5


def best_adjacent_move(mapping, u):
    """Best balanced move of ``u`` into one of its adjacent blocks."""
    own = mapping.block_of[u]
    best_block, best_gain = -1, None
    for j in iter_blocks(mapping.adjacent_blocks(u)):
        if j == own or not mapping.fits(u, j):
            continue
        g = compute_gain(mapping, u, j)
        if best_gain is None or g > best_gain:
            best_block, best_gain = j, g
    return best_block, best_gain


def lp_refine(mapping, rounds=DEFAULT_ROUNDS, rng=None, gain_table=None):
    """Run label propagation in place and return the total improvement.

    If ``gain_table`` is given it is patched after every kept move.
    """
    rng = rng or random.Random(0)
    total = 0
    for _ in range(rounds):
        nodes = mapping.boundary_nodes()
        rng.shuffle(nodes)
        moved = 0
        for u in nodes:
            to, gain = best_adjacent_move(mapping, u)
            if to < 0 or gain <= 0:
                continue
            frm = mapping.block_of[u]
            result = mapping.apply_move(u, to, revert_if_negative=True)
            if result.reverted:
                continue
            # sequential execution: nothing can interfere between the two
            assert result.gain == gain, (result.gain, gain)
            if gain_table is not None:
                gain_table.update(u, frm, to)
            total += result.gain
            moved += 1
        if moved == 0:
            break
    return total
