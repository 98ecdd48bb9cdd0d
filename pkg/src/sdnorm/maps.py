"""Combinatorial maps, the map of a diagram, and canonical isomorphism codes.

A map on ``n`` darts is a pair of permutations: ``x`` pairs the two darts
of every edge and ``y`` turns counterclockwise around every vertex.  A
directed map also marks one dart per edge (the tail), and darts may carry
labels.

Connected diagrams are equivalent exactly when their maps are
isomorphic, so equivalence reduces to comparing canonical codes.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import Diagram, connectivity, extract_graph
from .errors import NotConnected
from .normalize import closed_form, floating_component


@dataclass
class CombinatorialMap:
    x: list
    y: list
    distinguished: Optional[frozenset] = None
    labels: Optional[list] = None

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must act on the same darts")
        n = len(self.x)
        if sorted(self.x) != list(range(n)) or sorted(self.y) != list(range(n)):
            raise ValueError("x and y must be permutations")
        if any(self.x[self.x[d]] != d or self.x[d] == d for d in range(n)):
            raise ValueError("x must be an involution without fixed points")

    @property
    def dart_count(self) -> int:
        return len(self.x)

    def label(self, d: int) -> str:
        if self.labels is None or self.labels[d] is None:
            return ""
        return self.labels[d]

    def flag(self, d: int) -> int:
        return 1 if self.distinguished is not None and d in self.distinguished else 0

    def vertices(self) -> list[list[int]]:
        return cycles(self.y)

    def edges(self) -> list[list[int]]:
        return cycles(self.x)

    def faces(self) -> list[list[int]]:
        return cycles([self.y[self.x[d]] for d in range(self.dart_count)])

    def is_connected(self) -> bool:
        n = self.dart_count
        if n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.x[d], self.y[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


def from_cycles(n: int, x_cycles, y_cycles, one_based: bool = False, **kw) -> CombinatorialMap:
    """Build a map from cycle notation, e.g. ``[(1, 2), (3, 4)]``."""
    shift = 1 if one_based else 0
    x, y = list(range(n)), list(range(n))
    for perm, cyc_list in ((x, x_cycles), (y, y_cycles)):
        for cyc in cyc_list:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                perm[a - shift] = b - shift
    return CombinatorialMap(x, y, **kw)


def euler_characteristic(m: CombinatorialMap) -> int:
    """Vertices minus edges plus faces."""
    xy = [m.x[m.y[d]] for d in range(m.dart_count)]
    return len(cycles(m.y)) + len(cycles(xy)) - len(cycles(m.x))


# --------------------------------------------------------------- gadgets


def gamma(d: Diagram) -> CombinatorialMap:
    """Directed map of a diagram.

    Each vertex gets two extra dangling edges, one entering on its left and
    one leaving on its right, so that reflecting or rotating a vertex is
    visible in the map.  Clockwise around a vertex the darts read: dangling
    input, inputs left to right, dangling output, outputs right to left.
    Diagrams with boundary wires, and the empty diagram, are closed first.
    A single component floating beside pass-through wires is mapped on
    its own; :func:`map_code` records its offset.
    """
    closed = _mapped_diagram(d)
    g = extract_graph(closed)
    x: list = []
    labels: list = []
    tails = set()

    def new_dart(label):
        x.append(-1)
        labels.append(label)
        return len(x) - 1

    def pair(a, b):
        x[a], x[b] = b, a

    top = [new_dart(None) for _ in range(len(g))]
    bottom = [new_dart(None) for _ in range(len(g))]
    for e in range(len(g)):
        pair(top[e], bottom[e])
        tails.add(top[e])
    around = []
    for n, v in enumerate(closed.vertices):
        for e in g.inputs[n]:
            labels[bottom[e]] = v.label
        for e in g.outputs[n]:
            labels[top[e]] = v.label
        dang_in = new_dart(v.label)
        leaf_in = new_dart(None)
        pair(dang_in, leaf_in)
        tails.add(leaf_in)
        dang_out = new_dart(v.label)
        leaf_out = new_dart(None)
        pair(dang_out, leaf_out)
        tails.add(dang_out)
        cw = [dang_in] + [bottom[e] for e in g.inputs[n]] + [dang_out] + [top[e] for e in reversed(g.outputs[n])]
        around.append(cw)
        around.append([leaf_in])
        around.append([leaf_out])
    y = [0] * len(x)
    for cw in around:
        for k, dart in enumerate(cw):
            y[dart] = cw[k - 1]  # counterclockwise successor
    return CombinatorialMap(x, y, frozenset(tails), labels)


def iota(m: CombinatorialMap) -> CombinatorialMap:
    """Undirected map encoding the edge directions of ``m`` with a loop on every edge.

    Each edge ``tail -> head`` becomes ``tail - mid - head`` with a loop at
    ``mid``; clockwise around ``mid`` the tail side comes right after the loop.
    """
    if m.distinguished is None:
        raise ValueError("iota needs a directed map")
    n = m.dart_count
    x = list(m.x) + [0] * (2 * n)
    y = list(m.y) + [0] * (2 * n)
    labels = None if m.labels is None else list(m.labels) + [None] * (2 * n)
    k = n
    for tail in sorted(m.distinguished):
        head = m.x[tail]
        to_tail, loop_a, loop_b, to_head = k, k + 1, k + 2, k + 3
        k += 4
        x[tail], x[to_tail] = to_tail, tail
        x[head], x[to_head] = to_head, head
        x[loop_a], x[loop_b] = loop_b, loop_a
        ring = [to_tail, loop_a, loop_b, to_head]
        for a, b in zip(ring, ring[1:] + ring[:1]):
            y[a] = b
    return CombinatorialMap(x, y, None, labels)


# ------------------------------------------------------------ canonical code


def _refine(m: CombinatorialMap) -> list[int]:
    """Isomorphism-invariant colouring of darts, refined until stable."""
    n = m.dart_count
    yinv = [0] * n
    for d, e in enumerate(m.y):
        yinv[e] = d
    vdeg = [0] * n
    for cyc in m.vertices():
        for d in cyc:
            vdeg[d] = len(cyc)
    fdeg = [0] * n
    for cyc in m.faces():
        for d in cyc:
            fdeg[d] = len(cyc)
    keys = [(m.flag(d), m.label(d), vdeg[d], fdeg[d]) for d in range(n)]
    colour = _rank(keys)
    classes = len(set(colour))
    while True:
        keys = [(colour[d], colour[m.x[d]], colour[m.y[d]], colour[yinv[d]]) for d in range(n)]
        nxt = _rank(keys)
        count = len(set(nxt))
        colour = nxt
        if count == classes:
            return colour
        classes = count


def _rank(keys: list) -> list[int]:
    table = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _code_from_root(m: CombinatorialMap, root: int) -> tuple:
    n = m.dart_count
    order = [root]
    new = {root: 0}
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        for e in (m.x[d], m.y[d]):
            if e not in new:
                new[e] = len(order)
                order.append(e)
    if len(order) != n:
        raise NotConnected("map")
    return tuple((new[m.x[d]], new[m.y[d]], m.flag(d), m.label(d)) for d in order)


def canonical_map_code(m: CombinatorialMap) -> bytes:
    """Byte string equal for two connected maps exactly when they are isomorphic.

    The code is the smallest breadth-first relabelling over all root darts
    in the rarest class of an invariant colouring.  Restricting the roots
    this way keeps the result canonical because isomorphisms preserve colours.
    """
    if m.dart_count == 0:
        return b"M\x00"
    colour = _refine(m)
    sizes: dict = {}
    for c in colour:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(sizes, key=lambda c: (sizes[c], c))
    best = min(_code_from_root(m, d) for d in range(m.dart_count) if colour[d] == target)
    out = [b"M", struct.pack(">I", m.dart_count)]
    for xd, yd, flag, lab in best:
        raw = lab.encode()
        out.append(struct.pack(">IIBI", xd, yd, flag, len(raw)) + raw)
    return b"".join(out)


def maps_isomorphic(m1: CombinatorialMap, m2: CombinatorialMap) -> bool:
    if m1.dart_count != m2.dart_count:
        return False
    if (m1.distinguished is None) != (m2.distinguished is None):
        return False
    return canonical_map_code(m1) == canonical_map_code(m2)


def map_code(d: Diagram) -> bytes:
    """Canonical code of the map of a connected or boundary-connected diagram.

    The code starts with the boundary widths and, for a component floating
    beside pass-through wires, the number of those wires on its left.
    """
    if connectivity(d) == "disconnected":
        raise NotConnected()
    floating = floating_component(d)
    offset = floating[0] if floating is not None and not d.is_closed() else 0xFFFFFFFF
    head = struct.pack(">III", d.source_count, d.target_count, offset)
    return head + canonical_map_code(gamma(d))


def decide_equiv_connected(d1: Diagram, d2: Diagram) -> bool:
    """Equivalence of two diagrams whose boundary closures are connected, via map isomorphism."""
    if (d1.source_count, d1.target_count) != (d2.source_count, d2.target_count):
        return False
    return map_code(d1) == map_code(d2)


def dump_map(m: CombinatorialMap) -> str:
    """Cycle notation of ``x`` and ``y`` plus the marked darts and labels."""

    def fmt(perm):
        return " ".join("(" + " ".join(map(str, c)) + ")" for c in cycles(perm))

    lines = [f"darts {m.dart_count}", f"x {fmt(m.x)}", f"y {fmt(m.y)}"]
    if m.distinguished is not None:
        lines.append("tails " + " ".join(map(str, sorted(m.distinguished))))
    if m.labels is not None:
        lines.append("labels " + " ".join(f"{d}:{lab}" for d, lab in enumerate(m.labels) if lab is not None))
    return "\n".join(lines) + "\n"


def _mapped_diagram(d: Diagram) -> Diagram:
    floating = floating_component(d)
    return floating[1] if floating is not None else closed_form(d)


def plain_map(d: Diagram) -> CombinatorialMap:
    """Undirected, unlabelled map of the closed diagram without vertex gadgets.

    Exchange-equivalent diagrams always have isomorphic plain maps, but
    the converse fails: this map forgets edge directions and which side of a
    vertex is up.
    """
    closed = _mapped_diagram(d)
    g = extract_graph(closed)
    x = [0] * (2 * len(g))
    for e in range(len(g)):
        x[2 * e], x[2 * e + 1] = 2 * e + 1, 2 * e
    y = [0] * len(x)
    for n in range(closed.height):
        cw = [2 * e + 1 for e in g.inputs[n]] + [2 * e for e in reversed(g.outputs[n])]
        for k, dart in enumerate(cw):
            y[dart] = cw[k - 1]
    return CombinatorialMap(x, y)
