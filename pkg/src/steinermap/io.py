"""Readers and writers for hMetis hypergraphs, Metis target graphs and mappings,
plus deterministic target graph generators.

Grid weights come from ``Lcg64`` ("lcg64-v1"): a 64-bit linear congruential
generator with multiplier 6364136223846793005 and increment
1442695040888963407, state starting at the seed modulo 2**64.  An integer in
``[lo, hi]`` is drawn by stepping the state once and taking
``lo + (state >> 32) % (hi - lo + 1)``.  Any language can reproduce it.
"""

from __future__ import annotations

from math import prod
from pathlib import Path

from .errors import (
    AsymmetricEdge,
    Disconnected,
    DisconnectedTarget,
    EmptyNet,
    FormatError,
    InvalidBlock,
    LengthMismatch,
    MalformedHeader,
    PinOutOfRange,
)
from .hypergraph import Hypergraph, TargetGraph


def _content_lines(text):
    """(line number, stripped text) for every non-comment line."""
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line.startswith("%"):
            continue
        yield no, line


def _ints(line, no):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}", no) from None


def parse_hmetis(text) -> Hypergraph:
    lines = list(_content_lines(text))
    while lines and not lines[0][1]:
        lines.pop(0)
    if not lines:
        raise MalformedHeader("missing header")
    no, header = lines[0]
    try:
        fields = [int(tok) for tok in header.split()]
    except ValueError:
        raise MalformedHeader(f"bad header {header!r}", no) from None
    if len(fields) not in (2, 3) or fields[0] < 0 or fields[1] < 0:
        raise MalformedHeader(f"bad header {header!r}", no)
    m, n = fields[0], fields[1]
    fmt = fields[2] if len(fields) == 3 else 0
    if fmt not in (0, 1, 10, 11):
        raise MalformedHeader(f"unknown format code {fmt}", no)
    net_weighted = fmt in (1, 11)
    node_weighted = fmt in (10, 11)

    body = lines[1:]
    if len(body) < m:
        raise FormatError(f"expected {m} net lines, found {len(body)}", no)
    nets, net_weights = [], []
    for no, line in body[:m]:
        vals = _ints(line, no)
        if net_weighted:
            if not vals:
                raise EmptyNet("net line without weight", no)
            net_weights.append(vals[0])
            vals = vals[1:]
        if not vals:
            raise EmptyNet("net has no pins", no)
        for pin in vals:
            if not 1 <= pin <= n:
                raise PinOutOfRange(f"pin {pin} outside [1, {n}]", no)
        nets.append([pin - 1 for pin in vals])
    node_weights = None
    rest = body[m:]
    if node_weighted:
        if len(rest) < n:
            raise FormatError(f"expected {n} node weight lines, found {len(rest)}", no)
        node_weights = []
        for no, line in rest[:n]:
            vals = _ints(line, no)
            if len(vals) != 1:
                raise FormatError("node weight line must hold one integer", no)
            node_weights.append(vals[0])
        rest = rest[n:]
    for no, line in rest:
        if line:
            raise FormatError("trailing content", no)
    try:
        return Hypergraph(nets, n, node_weights, net_weights if net_weighted else None)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_hmetis(hg: Hypergraph) -> str:
    weighted_nets = any(w != 1 for w in hg.net_weights)
    weighted_nodes = any(w != 1 for w in hg.node_weights)
    fmt = (10 if weighted_nodes else 0) + (1 if weighted_nets else 0)
    out = [f"{hg.num_nets} {hg.num_nodes}" + (f" {fmt}" if fmt else "")]
    for e in range(hg.num_nets):
        pins = " ".join(str(v + 1) for v in hg.pins(e))
        out.append(f"{hg.net_weights[e]} {pins}" if weighted_nets else pins)
    if weighted_nodes:
        out.extend(str(w) for w in hg.node_weights)
    return "\n".join(out) + "\n"


def parse_target_graph(text) -> TargetGraph:
    """Metis graph format; header ``k m [fmt [ncon]]``, 1-based neighbours."""
    lines = list(_content_lines(text))
    while lines and not lines[0][1]:
        lines.pop(0)
    if not lines:
        raise MalformedHeader("missing header")
    no, header = lines[0]
    parts = header.split()
    if len(parts) not in (2, 3, 4):
        raise MalformedHeader(f"bad header {header!r}", no)
    try:
        k, m = int(parts[0]), int(parts[1])
        ncon = int(parts[3]) if len(parts) == 4 else 1
    except ValueError:
        raise MalformedHeader(f"bad header {header!r}", no) from None
    fmt = parts[2].zfill(3) if len(parts) >= 3 else "000"
    if len(fmt) != 3 or set(fmt) - {"0", "1"} or fmt[0] == "1":
        raise MalformedHeader(f"unsupported format {parts[2]!r}", no)
    node_weighted = fmt[1] == "1"
    edge_weighted = fmt[2] == "1"

    body = lines[1:]
    while len(body) > k and not body[-1][1]:
        body.pop()
    if len(body) != k:
        raise FormatError(f"expected {k} adjacency lines, found {len(body)}", no)
    seen = {}
    for u, (no, line) in enumerate(body):
        vals = _ints(line, no)
        if node_weighted:
            vals = vals[ncon:]
        step = 2 if edge_weighted else 1
        if len(vals) % step:
            raise FormatError("neighbour without weight", no)
        for i in range(0, len(vals), step):
            v = vals[i] - 1
            w = vals[i + 1] if edge_weighted else 1
            if not 0 <= v < k:
                raise PinOutOfRange(f"neighbour {v + 1} outside [1, {k}]", no)
            if v == u:
                raise FormatError("self loop", no)
            if w <= 0:
                raise FormatError("edge weights must be positive", no)
            seen[(u, v)] = (w, no)
    edges = []
    for (u, v), (w, no) in seen.items():
        back = seen.get((v, u))
        if back is None or back[0] != w:
            raise AsymmetricEdge(f"edge {u + 1}-{v + 1} has no matching reverse entry", no)
        if u < v:
            edges.append((u, v, w))
    if len(edges) != m:
        raise MalformedHeader(f"header declares {m} edges, found {len(edges)}", lines[0][0])
    try:
        return TargetGraph(k, edges)
    except DisconnectedTarget as exc:
        raise Disconnected(str(exc)) from None


def write_target_graph(target: TargetGraph) -> str:
    adj = [[] for _ in range(target.k)]
    for u, v, w in target.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
    out = [f"{target.k} {len(target.edges)} 001"]
    for row in adj:
        out.append(" ".join(f"{v + 1} {w}" for v, w in sorted(row)))
    return "\n".join(out) + "\n"


class Lcg64:
    """64-bit linear congruential generator, version ``lcg64-v1``."""

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed):
        self.state = seed & self.MASK

    def next(self):
        self.state = (self.state * self.MULTIPLIER + self.INCREMENT) & self.MASK
        return self.state

    def randint(self, lo, hi):
        return lo + (self.next() >> 32) % (hi - lo + 1)


def generate_grid(rows, cols, weight_seed=0, low=1, high=10) -> TargetGraph:
    """``rows x cols`` grid; node ``i * cols + j``; 4-neighbourhood edges.

    Edges are drawn node by node in id order, right neighbour before lower
    neighbour, each weight taken from ``Lcg64(weight_seed)``.
    """
    gen = Lcg64(weight_seed)
    edges = []
    for i in range(rows):
        for j in range(cols):
            u = i * cols + j
            if j + 1 < cols:
                edges.append((u, u + 1, gen.randint(low, high)))
            if i + 1 < rows:
                edges.append((u, u + cols, gen.randint(low, high)))
    return TargetGraph(rows * cols, edges)


def generate_hierarchy(arity, costs) -> TargetGraph:
    """Complete graph over ``prod(arity)`` cores of a hierarchical machine.

    Two cores pay ``costs[j]`` for the lowest level ``j`` whose group (of
    ``arity[0] * ... * arity[j]`` consecutive cores) contains both.
    """
    arity, costs = list(arity), list(costs)
    if len(arity) != len(costs) or not arity:
        raise ValueError("arity and cost sequences must have equal, nonzero length")
    k = prod(arity)
    group = []
    size = 1
    for a in arity:
        size *= a
        group.append(size)
    edges = []
    for x in range(k):
        for y in range(x + 1, k):
            level = next(j for j, g in enumerate(group) if x // g == y // g)
            edges.append((x, y, costs[level]))
    return TargetGraph(k, edges)


def write_mapping(blocks) -> str:
    return "".join(f"{b}\n" for b in blocks)


def parse_mapping(text, n, k):
    blocks = []
    for no, line in _content_lines(text):
        if not line:
            continue
        try:
            b = int(line)
        except ValueError:
            raise FormatError(f"bad block id {line!r}", no) from None
        if not 0 <= b < k:
            raise InvalidBlock(f"line {no}: block {b} outside [0, {k})")
        blocks.append(b)
    if len(blocks) != n:
        raise LengthMismatch(f"expected {n} entries, found {len(blocks)}")
    return blocks


def read_hypergraph(path) -> Hypergraph:
    return parse_hmetis(Path(path).read_text(encoding="utf-8"))


def read_target_graph(path) -> TargetGraph:
    return parse_target_graph(Path(path).read_text(encoding="utf-8"))
