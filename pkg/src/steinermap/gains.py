"""Move gains g(u, t) and an n x k gain table kept current under moves."""

from __future__ import annotations


def compute_gain(mapping, u, to):
    """Objective decrease from moving ``u`` to block ``to``.

    Only nets whose connectivity set changes contribute: the source block
    leaves when u is its last pin, the target block joins when it had no pin.
    """
    frm = mapping.block_of[u]
    if frm == to:
        return 0
    hg = mapping.hypergraph
    dist = mapping.metric.distance
    weights = hg.net_weights
    fbit, tbit = 1 << frm, 1 << to
    gain = 0
    for e in hg.incident_nets(u):
        pc = mapping.pin_counts[e]
        lam = mapping.connectivity[e]
        if pc[frm] == 1:
            after = (lam & ~fbit) | tbit
        elif pc[to] == 0:
            after = lam | tbit
        else:
            continue
        if after != lam:
            gain += weights[e] * (dist(lam) - dist(after))
    return gain


def net_contribution(dist, k, lam, sole_pin, block, weight):
    """Contribution of one net to every entry of a pin's gain row.

    ``sole_pin`` says whether the pin is the last one of the net in its own
    ``block``.  The entry for ``block`` itself is 0.
    """
    row = [0] * k
    here = dist(lam)
    if sole_pin:
        base = lam & ~(1 << block)
        for j in range(k):
            if j != block:
                after = base | (1 << j)
                if after != lam:
                    row[j] = weight * (here - dist(after))
    else:
        for j in range(k):
            bit = 1 << j
            if not lam & bit:
                row[j] = weight * (here - dist(lam | bit))
    return row


class GainTable:
    """Full n x k table of move gains.

    After each :meth:`Mapping.move`, call :meth:`update` with the move so the
    table is patched through the four delta-gain trigger cases.
    """

    MEMO_LIMIT = 1 << 18

    def __init__(self, mapping):
        self.mapping = mapping
        self.entry_updates = 0
        self._memo = {}
        self.rebuild()

    def _contribution(self, lam, sole_pin, block):
        # unit-weight contribution row, shared by all nets with the same state
        key = (lam, block, sole_pin)
        row = self._memo.get(key)
        if row is None:
            if len(self._memo) >= self.MEMO_LIMIT:
                self._memo.clear()
            mp = self.mapping
            row = tuple(net_contribution(mp.metric.distance, mp.k, lam, sole_pin, block, 1))
            self._memo[key] = row
        return row

    def rebuild(self):
        mp = self.mapping
        self.gains = [self._row(u) for u in range(mp.hypergraph.num_nodes)]

    def _row(self, u):
        mp = self.mapping
        hg = mp.hypergraph
        k = mp.k
        s = mp.block_of[u]
        row = [0] * k
        weights = hg.net_weights
        for e in hg.incident_nets(u):
            contrib = self._contribution(mp.connectivity[e], mp.pin_counts[e][s] == 1, s)
            w = weights[e]
            for j, c in enumerate(contrib):
                if c:
                    row[j] += w * c
        return row

    def gain(self, u, to):
        return self.gains[u][to]

    def best_move(self, u, feasible=None):
        """Highest-gain target block for ``u`` (lowest id on ties)."""
        mp = self.mapping
        row = self.gains[u]
        own = mp.block_of[u]
        best_block, best_gain = -1, None
        for j in range(mp.k):
            if j == own or (feasible is not None and not feasible(u, j)):
                continue
            g = row[j]
            if best_gain is None or g > best_gain:
                best_block, best_gain = j, g
        return best_block, best_gain

    def update(self, u, frm, to):
        """Patch the table after ``u`` moved from ``frm`` to ``to``."""
        self.gains[u] = self._row(u)
        for e in self.mapping.hypergraph.incident_nets(u):
            self.delta_gain_update(e, u, frm, to)

    def delta_gain_update(self, e, u, frm, to):
        """Apply net ``e``'s share of the update for the move of ``u``.

        Reads the post-move pin counts and reconstructs the pre-move state
        in O(1): one pin more in ``frm``, one less in ``to``.
        """
        mp = self.mapping
        hg = mp.hypergraph
        pc = mp.pin_counts[e]
        n_from, n_to = pc[frm], pc[to]
        lam_after = mp.connectivity[e]
        lam_before = lam_after | (1 << frm)
        if n_to == 1:
            lam_before &= ~(1 << to)

        if n_from == 0 or n_to == 1:
            affected = [v for v in hg.pins(e) if v != u]
        else:
            affected = []
            if n_from == 1:
                affected.extend(v for v in hg.pins(e) if v != u and mp.block_of[v] == frm)
            if n_to == 2:
                affected.extend(v for v in hg.pins(e) if v != u and mp.block_of[v] == to)
        if not affected:
            return

        k = mp.k
        weight = hg.net_weights[e]
        for v in affected:
            b = mp.block_of[v]
            count_after = pc[b]
            count_before = count_after + (1 if b == frm else 0) - (1 if b == to else 0)
            old = self._contribution(lam_before, count_before == 1, b)
            new = self._contribution(lam_after, count_after == 1, b)
            if old != new:
                row = self.gains[v]
                for j in range(k):
                    if old[j] != new[j]:
                        row[j] += weight * (new[j] - old[j])
            self.entry_updates += k

    def audit(self):
        """Number of entries disagreeing with :func:`compute_gain`."""
        mp = self.mapping
        bad = 0
        for u in range(mp.hypergraph.num_nodes):
            for j in range(mp.k):
                expected = 0 if j == mp.block_of[u] else compute_gain(mp, u, j)
                if self.gains[u][j] != expected:
                    bad += 1
        return bad


def initialize(mapping):
    return GainTable(mapping)
