"""Pairwise max-flow min-cut refinement for the Steiner tree metric.

For a block pair (V1, V2) a region B = B1 + B2 around their cut nets is
grown, the rest of V1 is contracted into the source and the rest of V2 into
the sink.  Net capacities are chosen so that the cut-net value of the flow
network tracks the Steiner objective: exactly on plain graphs, as a lower
bound on the improvement for hypergraphs.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .blocksets import iter_blocks
from .errors import EmptyRegion

SOURCE, SINK = 0, 1
MAX_SWEEPS = 8
MAX_PIERCES = 32


class FlowNetwork:
    """Directed residual network with paired arcs (arc ``i ^ 1`` is the reverse).

    Besides the arcs it keeps ``nets``: (network nodes, capacity) pairs used to
    evaluate the cut-net value of any node assignment.
    """

    def __init__(self):
        self.num_nodes = 2
        self.head = []
        self.cap = []
        self.adj = [[], []]
        self.nets = []
        self.node_of = {}  # hypergraph node -> network node
        self.hg_node = [None, None]
        self.expansions = {}  # net id -> (in node, out node, bridge arc)
        self.clamped = 0
        self.infinity = None
        self.res = None
        self.flow = 0

    def add_node(self, hg_node=None):
        idx = self.num_nodes
        self.num_nodes += 1
        self.adj.append([])
        self.hg_node.append(hg_node)
        if hg_node is not None:
            self.node_of[hg_node] = idx
        return idx

    def add_arc(self, u, v, cap, rev_cap=0):
        i = len(self.head)
        self.head += [v, u]
        self.cap += [cap, rev_cap]
        if self.res is not None:
            self.res += [cap, rev_cap]
        self.adj[u].append(i)
        self.adj[v].append(i + 1)
        return i

    def arcs(self):
        """(tail, head, capacity) of every forward arc."""
        for i in range(0, len(self.head), 2):
            yield self.head[i + 1], self.head[i], self.cap[i]

    def arc_capacity(self, u, v):
        return sum(c for a, b, c in self.arcs() if (a, b) == (u, v))

    def cut_value(self, source_side):
        """Cut-net value of an assignment; ``source_side(x)`` -> bool."""
        total = 0
        for nodes, cap in self.nets:
            sides = {source_side(x) for x in nodes}
            if len(sides) == 2:
                total += cap
        return total

    def max_flow(self):
        """Dinic's algorithm; leaves the residual capacities in ``self.res``.

        Calling it again after adding arcs continues from the current flow.
        """
        if self.res is None:
            self.res = list(self.cap)
        res = self.res
        head, adj = self.head, self.adj
        n = self.num_nodes
        flow = self.flow
        while True:
            level = [-1] * n
            level[SOURCE] = 0
            q = deque([SOURCE])
            while q:
                x = q.popleft()
                for i in adj[x]:
                    y = head[i]
                    if res[i] > 0 and level[y] < 0:
                        level[y] = level[x] + 1
                        q.append(y)
            if level[SINK] < 0:
                break
            ptr = [0] * n
            while True:
                pushed = self._augment(res, level, ptr)
                if not pushed:
                    break
                flow += pushed
        self.flow = flow
        return flow

    def _augment(self, res, level, ptr):
        head, adj = self.head, self.adj
        stack = [SOURCE]
        path = []
        while stack:
            x = stack[-1]
            if x == SINK:
                amount = min(res[i] for i in path)
                for i in path:
                    res[i] -= amount
                    res[i ^ 1] += amount
                return amount
            advanced = False
            while ptr[x] < len(adj[x]):
                i = adj[x][ptr[x]]
                y = head[i]
                if res[i] > 0 and level[y] == level[x] + 1:
                    stack.append(y)
                    path.append(i)
                    advanced = True
                    break
                ptr[x] += 1
            if not advanced:
                level[x] = -1
                stack.pop()
                if path:
                    path.pop()
                    ptr[stack[-1]] += 1
        return 0

    def source_reachable(self):
        """Nodes reachable from the source in the residual network."""
        seen = [False] * self.num_nodes
        seen[SOURCE] = True
        q = deque([SOURCE])
        while q:
            x = q.popleft()
            for i in self.adj[x]:
                y = self.head[i]
                if self.res[i] > 0 and not seen[y]:
                    seen[y] = True
                    q.append(y)
        return seen

    def sink_reaching(self):
        """Nodes that can still reach the sink in the residual network."""
        seen = [False] * self.num_nodes
        seen[SINK] = True
        q = deque([SINK])
        while q:
            x = q.popleft()
            for i in self.adj[x]:
                y = self.head[i]
                if self.res[i ^ 1] > 0 and not seen[y]:
                    seen[y] = True
                    q.append(y)
        return seen


def cut_nets_of_pair(mapping, b1, b2):
    both = (1 << b1) | (1 << b2)
    return [e for e, lam in enumerate(mapping.connectivity) if lam & both == both]


def adjacent_pairs(mapping):
    pairs = set()
    for lam in mapping.connectivity:
        if lam & (lam - 1):
            pairs.update(combinations(list(iter_blocks(lam)), 2))
    return sorted(pairs)


def grow_region(mapping, b1, b2, max_weights=None, alpha=1.0):
    """Grow B1 in ``b1`` and B2 in ``b2`` by alternating BFS from the cut.

    By default side i may hold c(Bi) <= alpha * Lmax - (c(Vj) - c(Bj)): the
    part of the other block that stays fixed plus this side must fit into
    one block.  The bound loosens as the other side grows.  ``max_weights``
    replaces it with fixed per-side caps.  Returns ``(B1, B2)`` as lists.
    """
    cut = cut_nets_of_pair(mapping, b1, b2)
    if not cut:
        raise EmptyRegion(f"blocks {b1} and {b2} share no cut net")
    hg = mapping.hypergraph
    bw = mapping.block_weights
    blocks = (b1, b2)
    regions = ([], [])
    weights = [0, 0]
    limit = alpha * mapping.max_weight

    def cap(side):
        if max_weights is not None:
            return max_weights[side]
        other = 1 - side
        return limit - (bw[blocks[other]] - weights[other])

    in_region = set()
    queues = (deque(), deque())
    for e in cut:
        for v in hg.pins(e):
            b = mapping.block_of[v]
            if b == b1:
                queues[0].append(v)
            elif b == b2:
                queues[1].append(v)

    def step(side):
        q = queues[side]
        while q:
            v = q.popleft()
            if v in in_region:
                continue
            w = hg.node_weights[v]
            if weights[side] + w > cap(side):
                q.appendleft(v)  # may fit once the other side has grown
                return False
            in_region.add(v)
            regions[side].append(v)
            weights[side] += w
            for e in hg.incident_nets(v):
                for x in hg.pins(e):
                    if x not in in_region and mapping.block_of[x] == blocks[side]:
                        q.append(x)
            return True
        return False

    while True:
        a = step(0)
        b = step(1)
        if not (a or b):
            break
    return regions


def _network_skeleton(region1, region2):
    net = FlowNetwork()
    for v in region1:
        net.add_node(v)
    for v in region2:
        net.add_node(v)
    return net


def _finite_infinity(net):
    return sum(cap for _, cap in net.nets) + 1


def _add_terminal_edge(net, x, cap):
    """Undirected edge between a region node and the source or sink."""
    if x[0] == SOURCE:
        net.add_arc(SOURCE, x[1], cap)
        net.nets.append(((SOURCE, x[1]), cap))
    else:
        net.add_arc(x[1], SINK, cap)
        net.nets.append(((x[1], SINK), cap))


def _classify_nets(mapping, b1, b2, region1, region2):
    """Yield ``(e, network nodes, capacity)`` or ``(e, terminal edge)`` specs."""
    hg = mapping.hypergraph
    dist = mapping.metric.distance
    bit1, bit2 = 1 << b1, 1 << b2
    both = bit1 | bit2
    in_b = {v: 0 for v in region1}
    in_b.update({v: 1 for v in region2})
    nets = sorted({e for v in in_b for e in hg.incident_nets(v)})
    pair_dist = dist(both)
    for e in nets:
        lam = mapping.connectivity[e]
        w = hg.net_weights[e]
        pins_b = [v for v in hg.pins(e) if v in in_b]
        has_s = any(mapping.block_of[v] == b1 and v not in in_b for v in hg.pins(e))
        has_t = any(mapping.block_of[v] == b2 and v not in in_b for v in hg.pins(e))
        if not lam & ~both:
            if has_s and has_t:
                continue  # cut whatever happens inside B
            yield e, "net", pins_b, has_s, has_t, pair_dist * w
        elif len(pins_b) == 1:
            u = pins_b[0]
            own, other = (b1, b2) if in_b[u] == 0 else (b2, b1)
            after = lam | (1 << other)
            if mapping.pin_counts[e][own] == 1:
                after &= ~(1 << own)
            improvement = (dist(lam) - dist(after)) * w
            if improvement == 0:
                continue
            # the edge sits on the side whose crossing costs what the move changes
            on_source = (in_b[u] == 0) == (improvement < 0)
            yield e, "terminal", u, on_source, abs(improvement)
        else:
            if lam & both == both:
                here = dist(lam)
                cap = min(here - dist(lam & ~bit1), here - dist(lam & ~bit2)) * w
            else:
                cap = (dist(lam | both) - dist(lam)) * w
                # keep the side the net currently touches attached so that a
                # full flip is charged as a cut rather than silently ignored
                if lam & bit1:
                    has_s = True
                else:
                    has_t = True
            if has_s and has_t:
                continue
            yield e, "net", pins_b, has_s, has_t, cap


def _build(mapping, b1, b2, region1, region2, lawler):
    net = _network_skeleton(region1, region2)
    specs = list(_classify_nets(mapping, b1, b2, region1, region2))
    pending = []
    for spec in specs:
        if spec[1] == "terminal":
            _, _, u, on_source, cap = spec
            x = net.node_of[u]
            _add_terminal_edge(net, (SOURCE if on_source else SINK, x), cap)
            continue
        e, _, pins_b, has_s, has_t, cap = spec
        if cap < 0:
            net.clamped += 1
            cap = 0
        nodes = [net.node_of[v] for v in pins_b]
        if has_s:
            nodes.append(SOURCE)
        if has_t:
            nodes.append(SINK)
        if len(nodes) < 2 or cap == 0:
            continue
        net.nets.append((tuple(nodes), cap))
        pending.append((e, nodes, cap))

    inf = _finite_infinity(net)
    net.infinity = inf
    for e, nodes, cap in pending:
        if len(nodes) == 2 and not (lawler and len(mapping.hypergraph.pins(e)) > 2):
            a, b = nodes
            if a == SOURCE or b == SINK:
                net.add_arc(a, b, cap)
            elif b == SOURCE or a == SINK:
                net.add_arc(b, a, cap)
            else:
                net.add_arc(a, b, cap, cap)
            continue
        e_in = net.add_node()
        e_out = net.add_node()
        bridge = net.add_arc(e_in, e_out, cap)
        net.expansions[e] = (e_in, e_out, bridge)
        for x in nodes:
            if x == SOURCE:
                net.add_arc(SOURCE, e_in, inf)
            elif x == SINK:
                net.add_arc(e_out, SINK, inf)
            else:
                net.add_arc(x, e_in, inf)
                net.add_arc(e_out, x, inf)
    return net


def build_graph_network(mapping, b1, b2, region1, region2):
    """Flow network for a plain graph: every net becomes an undirected edge."""
    if not mapping.hypergraph.is_graph():
        raise ValueError("graph model needs a hypergraph whose nets all have two pins")
    return _build(mapping, b1, b2, region1, region2, lawler=False)


def build_hypergraph_network(mapping, b1, b2, region1, region2):
    """Flow network for a hypergraph; nets are Lawler-expanded."""
    return _build(mapping, b1, b2, region1, region2, lawler=True)


def _side_fn(net, sides):
    def source_side(x):
        if x == SOURCE:
            return True
        if x == SINK:
            return False
        return sides[x]
    return source_side


def _candidate_assignments(net):
    """Source-side min cut and sink-side min cut as region-node assignments."""
    reach = net.source_reachable()
    reaching = net.sink_reaching()
    region_nodes = [x for x in range(2, net.num_nodes) if net.hg_node[x] is not None]
    first = {x: reach[x] for x in region_nodes}
    second = {x: not reaching[x] for x in region_nodes}
    return [first] if second == first else [first, second]


def _pierce_node(net, sides, to_source, pierced, current):
    """Region node to fix to the growing side.

    Prefers neighbours of that side, then nodes off augmenting paths, then
    nodes already in the side's block.
    """
    blocked = net.sink_reaching() if to_source else net.source_reachable()
    terminal = SOURCE if to_source else SINK
    best = None
    for x, src in sides.items():
        if src == to_source or x in pierced:
            continue
        adjacent = any(sides.get(net.head[i], net.head[i] == terminal) == to_source
                       and net.head[i] != (SINK if to_source else SOURCE)
                       for i in net.adj[x])
        key = (not adjacent, blocked[x], current[x] != to_source, x)
        if best is None or key < best:
            best = key
    return None if best is None else best[-1]


def _apply(mapping, moves, gain_table=None):
    gain = 0
    for u, frm, to in moves:
        gain += mapping.move(u, to)
        if gain_table is not None:
            gain_table.update(u, frm, to)
    return gain


def _undo(mapping, moves, gain_table=None):
    for u, frm, to in reversed(moves):
        mapping.move(u, frm)
        if gain_table is not None:
            gain_table.update(u, to, frm)


def refine_pair(mapping, b1, b2, gain_table=None, alpha=1.0, trace=None, max_pierces=MAX_PIERCES):
    """One flow refinement step on a block pair; returns the kept improvement.

    After the max flow, the source-side and sink-side minimum cuts are tried.
    If neither is balanced, a node next to the lighter side is fixed to
    that side's terminal and the flow is augmented further, at most
    ``max_pierces`` times.
    """
    try:
        region1, region2 = grow_region(mapping, b1, b2, alpha=alpha)
    except EmptyRegion:
        return 0
    if not region1 and not region2:
        return 0
    hg = mapping.hypergraph
    graph_model = hg.is_graph()
    if graph_model:
        net = build_graph_network(mapping, b1, b2, region1, region2)
    else:
        net = build_hypergraph_network(mapping, b1, b2, region1, region2)
    current = {net.node_of[v]: True for v in region1}
    current.update({net.node_of[v]: False for v in region2})
    current_cut = net.cut_value(_side_fn(net, current))
    limit = mapping.max_weight
    w1, w2 = mapping.block_weights[b1], mapping.block_weights[b2]
    pierced = set()
    best = None
    seen = set()

    for _ in range(max_pierces + 1):
        flow = net.max_flow()
        overloaded = []
        for sides in _candidate_assignments(net):
            key = frozenset(x for x, src in sides.items() if src)
            if key in seen:
                continue
            seen.add(key)
            cut = net.cut_value(_side_fn(net, sides))
            if cut != flow:
                raise AssertionError(f"min cut {cut} differs from max flow {flow}")
            moves = []
            new1, new2 = w1, w2
            for x, src in sides.items():
                if src != current[x]:
                    v = net.hg_node[x]
                    w = hg.node_weights[v]
                    if src:
                        moves.append((v, b2, b1))
                        new1, new2 = new1 + w, new2 - w
                    else:
                        moves.append((v, b1, b2))
                        new1, new2 = new1 - w, new2 + w
            if not moves:
                continue
            balanced = new1 <= limit and new2 <= limit
            if not balanced:
                overloaded.append((sides, new1 > limit))
                continue
            measured = _apply(mapping, moves)
            _undo(mapping, moves)
            record = {"pair": (b1, b2), "predicted": current_cut - cut, "measured": measured,
                      "balanced": True, "graph": graph_model, "clamped": net.clamped,
                      "accepted": False}
            if trace is not None:
                trace.append(record)
            if measured > 0 and (best is None or measured > best[0]):
                best = (measured, moves, record)
        if best is not None or not overloaded:
            break
        # the source side is too heavy -> push a node to the sink, and vice versa
        sides, source_heavy = overloaded[0]
        x = _pierce_node(net, sides, not source_heavy, pierced, current)
        if x is None:
            break
        pierced.add(x)
        if source_heavy:
            net.add_arc(x, SINK, net.infinity)
        else:
            net.add_arc(SOURCE, x, net.infinity)

    if best is None:
        return 0
    measured, moves, record = best
    kept = _apply(mapping, moves, gain_table)
    record["accepted"] = True
    return kept


def flow_refine(mapping, gain_table=None, alpha=1.0, max_sweeps=MAX_SWEEPS, trace=None):
    """Sweep all adjacent block pairs until a sweep accepts nothing."""
    total = 0
    for _ in range(max_sweeps):
        accepted = 0
        for b1, b2 in adjacent_pairs(mapping):
            gained = refine_pair(mapping, b1, b2, gain_table, alpha, trace)
            if gained > 0:
                total += gained
                accepted += 1
        if accepted == 0:
            break
    return total
