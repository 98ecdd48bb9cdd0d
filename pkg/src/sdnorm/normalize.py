"""Reduction of diagrams to their right (or left) normal form.

Two engines are provided.  The naive engine applies admissible exchanges
until none is left.  The fast engine works on the boundary closure of the
diagram: it peels leaves and eliminable edges off until a single vertex
remains, then puts them back one at a time, each time restoring normality
with only local work.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Optional

from .diagram import (
    Diagram,
    DiagramBuffer,
    Vertex,
    admits_left,
    admits_right,
    boundary_vertices,
    components,
    connectivity,
    extract_graph,
    mirror,
)
from .embedding import Embedding, eliminable_edges
from .errors import NotBoundaryConnected, StepCapExceeded

TOP_LABEL = "__top"
BOTTOM_LABEL = "__bot"


def step_cap(vertex_count: int) -> int:
    """Upper bound on exchanges accepted from the naive engine before giving up."""
    return 8 * vertex_count ** 3 + 64


def is_normal(d: Diagram, side: str = "right") -> bool:
    test = admits_right if side == "right" else admits_left
    return not any(test(d, n) for n in range(d.height - 1))


@dataclass
class Reduction:
    start: Diagram
    result: Diagram
    trace: list  # [("R" | "L", height), ...]

    @property
    def steps(self) -> int:
        return len(self.trace)

    step_count = steps


# ------------------------------------------------------------------ naive


def _sweep(buf: DiagramBuffer, side: str, strategy: str, seed: Optional[int], cap: int) -> list:
    n_v = len(buf)
    admits = buf.admits_right if side == "right" else buf.admits_left
    move = buf.right if side == "right" else buf.left
    tag = "R" if side == "right" else "L"
    trace = []
    if strategy == "random":
        rng = random.Random(seed)
        live = {n for n in range(n_v - 1) if admits(n)}
        while live:
            if len(trace) >= cap:
                raise StepCapExceeded(cap)
            n = rng.choice(sorted(live))
            move(n)
            trace.append((tag, n))
            for m in (n - 1, n, n + 1):
                if 0 <= m < n_v - 1:
                    if admits(m):
                        live.add(m)
                    else:
                        live.discard(m)
        return trace
    if strategy not in ("topmost", "bottommost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    top = strategy == "topmost"
    n = 0 if top else n_v - 2
    while 0 <= n < n_v - 1:
        if admits(n):
            if len(trace) >= cap:
                raise StepCapExceeded(cap)
            move(n)
            trace.append((tag, n))
            # only heights n - 1 .. n + 1 can have changed
            n = max(n - 1, 0) if top else min(n + 1, n_v - 2)
        else:
            n = n + 1 if top else n - 1
    return trace


def normalize_naive(
    d: Diagram,
    side: str = "right",
    strategy: str = "topmost",
    seed: Optional[int] = None,
    cap: Optional[int] = None,
) -> Reduction:
    """Apply exchanges on ``side`` until none is admissible.

    ``strategy`` picks the next exchange: ``"topmost"``, ``"bottommost"`` or
    ``"random"`` (seeded).  Raises :class:`NotBoundaryConnected` for
    disconnected input and :class:`StepCapExceeded` after ``cap``
    exchanges, by default ``8 v^3 + 64``.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if connectivity(d) == "disconnected":
        raise NotBoundaryConnected()
    buf = DiagramBuffer(d)
    trace = _sweep(buf, side, strategy, seed, step_cap(d.height) if cap is None else cap)
    return Reduction(d, buf.freeze(), trace)


def normal_form(d: Diagram, side: str = "right", method: str = "fast") -> Diagram:
    if method == "fast":
        return normalize_fast(d, side)
    return normalize_naive(d, side).result


# ---------------------------------------------------------------- spirals


def _drawn_spiral(n: int) -> tuple[Diagram, list[int]]:
    """Spiral of ``n`` vertices drawn with positions counted from the right.

    Also returns vertex indices in the order the vertices were wound on.
    """
    if n < 2:
        raise ValueError("spirals need at least two vertices")
    verts = [Vertex(0, 0, 1), Vertex(0, 1, 0)]
    born = [0, 1]  # born[k] = construction step of the vertex at index k
    outer_at_top = True
    for step in range(2, n):
        if outer_at_top:
            # widen the top end and wrap a new wire down the far side to a new bottom leaf
            first = verts[0]
            verts = [Vertex(0, 0, first.o + 1)] + [Vertex(v.h + 1, v.i, v.o) for v in verts[1:]]
            verts.append(Vertex(0, 1, 0))
            born.append(step)
        else:
            last = verts[-1]
            verts = [Vertex(0, 0, 1)] + verts[:-1] + [Vertex(last.h, last.i + 1, last.o)]
            born.insert(0, step)
        outer_at_top = not outer_at_top
    order = sorted(range(n), key=born.__getitem__)
    return Diagram(0, tuple(verts)), order


def spiral(n: int) -> Diagram:
    """The closed path of ``n`` vertices wound as a spiral.

    Every right reduction of it takes ``C(n, 3)`` exchanges.
    """
    return mirror(_drawn_spiral(n)[0])


def spiral_steps(n: int) -> int:
    return comb(n, 3)


def spiral_reduction(n: int) -> Reduction:
    """Reduce ``spiral(n)`` outside in.

    The outermost end travels past all vertices but its neighbour, then the
    same happens to the spiral one vertex shorter whose end now drags the
    first one along.
    """
    d, order = _drawn_spiral(n)
    start = mirror(d)
    buf = DiagramBuffer(start)
    trace: list = []
    for ident in reversed(order[2:]):
        _slide_right(buf, buf.index_of(ident), trace)
    trace.extend(_sweep(buf, "right", "topmost", None, step_cap(n)))
    return Reduction(start, buf.freeze(), trace)


# --------------------------------------------------------------- closure


def boundary_closure(d: Diagram) -> Diagram:
    """Close ``d`` with a top vertex feeding every source and a bottom vertex eating every target.

    The two extra wires run down the far left and far right so the closure of
    a boundary-connected diagram is connected.
    """
    top = Vertex(0, 0, d.source_count + 2, TOP_LABEL)
    body = [v._replace(h=v.h + 1) for v in d.vertices]
    bottom = Vertex(0, d.target_count + 2, 0, BOTTOM_LABEL)
    return Diagram(0, tuple([top] + body + [bottom]))


def closure_is_connected(d: Diagram) -> bool:
    """True when the boundary closure of ``d`` is connected.

    This fails for a boundary-connected diagram only when its single
    component touches no boundary wire while pass-through wires exist.
    """
    comps = components(d)
    if len(comps) == 0:
        return True
    touching = boundary_vertices(d)
    if d.source_count == 0 and d.target_count == 0:
        return len(comps) == 1
    return all(any(n in touching for n in c) for c in comps)


def closed_form(d: Diagram) -> Diagram:
    """``d`` itself when it is closed and non-empty, otherwise its boundary closure."""
    return d if d.is_closed() and d.height > 0 else boundary_closure(d)


def floating_component(d: Diagram) -> Optional[tuple[int, Diagram]]:
    """``(offset, component)`` when ``d`` is one closed component beside pass-through wires.

    ``offset`` counts the pass-through wires on its left.  Closed
    non-empty connected diagrams count too, with offset 0.  Returns ``None``
    otherwise.
    """
    if d.height == 0 or connectivity(d) == "disconnected":
        return None
    if not d.is_closed() and closure_is_connected(d):
        return None
    offset = d.vertices[0].h
    return offset, Diagram(0, tuple(v._replace(h=v.h - offset) for v in d.vertices))


def strip_closure(d: Diagram) -> Diagram:
    """Undo :func:`boundary_closure` on a diagram whose first and last vertices are the added ones."""
    top, bottom = d.vertices[0], d.vertices[-1]
    return Diagram(top.o - 2, tuple(v._replace(h=v.h - 1) for v in d.vertices[1:-1]))


# -------------------------------------------------------- wire surgery


def remove_wire(buf: DiagramBuffer, u: int, out_port: int, v: int, in_port: int) -> None:
    """Delete the wire from output ``out_port`` of vertex ``u`` to input ``in_port`` of ``v``."""
    h, i, o = buf.h, buf.i, buf.o
    p = h[u] + out_port
    for m in range(u + 1, v):
        if p < h[m]:
            h[m] -= 1
        elif p >= h[m] + i[m]:
            p += o[m] - i[m]
        else:
            raise ValueError(f"wire runs into vertex {m}")
    if p != h[v] + in_port:
        raise ValueError("wire does not end at the requested input")
    o[u] -= 1
    i[v] -= 1


def route_wire(buf: DiagramBuffer, u: int, out_port: int, v: int, in_port: int) -> None:
    """Add a wire from a new output ``out_port`` of ``u`` to a new input ``in_port`` of ``v``.

    The wire is threaded between existing wires level by level.  The only
    freedom is which side of an input-less vertex it passes; a planar route
    exists for exactly one set of choices, found by a forward sweep.
    """
    h, i, o = buf.h, buf.i, buf.o
    start = h[u] + out_port
    goal = h[v] + in_port
    # reach[m] maps spot-before-vertex-m -> (previous spot, passed on the left)
    layers = [{start: None}]
    for m in range(u + 1, v):
        nxt = {}
        for p in layers[-1]:
            if i[m] == 0:
                if p <= h[m]:
                    nxt.setdefault(p, (p, True))
                if p >= h[m]:
                    nxt.setdefault(p + o[m], (p, False))
            elif p <= h[m]:
                nxt.setdefault(p, (p, True))
            elif p >= h[m] + i[m]:
                nxt.setdefault(p + o[m] - i[m], (p, False))
        layers.append(nxt)
    if goal not in layers[-1]:
        raise ValueError("no planar route for the wire")
    p = goal
    for m in range(v - 1, u, -1):
        prev, left = layers[m - u][p]
        if left:
            h[m] += 1
        p = prev
    o[u] += 1
    i[v] += 1


def _slide_right(buf: DiagramBuffer, k: int, trace: Optional[list] = None) -> int:
    """Move the vertex at index ``k`` with right exchanges for as long as possible."""
    while True:
        if k > 0 and buf.admits_right(k - 1):
            buf.right(k - 1)
            if trace is not None:
                trace.append(("R", k - 1))
            k -= 1
        elif k < len(buf) - 1 and buf.admits_right(k):
            buf.right(k)
            if trace is not None:
                trace.append(("R", k))
            k += 1
        else:
            return k


def insert_leaf(buf: DiagramBuffer, host: int, above: bool, port: int, label=None, ident: int = -1) -> int:
    """Attach a one-wire vertex to ``host`` and slide it into place; returns its final index.

    With ``above`` the leaf feeds input ``port`` of the host, otherwise it
    consumes output ``port``.  If ``buf`` is a connected diagram in right
    normal form, so is the result.
    """
    if above:
        buf.i[host] += 1
        buf.insert(host, buf.h[host] + port, 0, 1, label, ident)
        k = host
    else:
        buf.o[host] += 1
        buf.insert(host + 1, buf.h[host] + port, 1, 0, label, ident)
        k = host + 1
    return _slide_right(buf, k)


def find_leaf(d: Diagram) -> Optional[tuple[int, int, bool, int]]:
    """First vertex with a single wire whose other end is a vertex.

    Returns ``(leaf, host, above, port)`` in the convention of
    :func:`insert_leaf`, or ``None``.
    """
    g = extract_graph(d)
    for n, v in enumerate(d.vertices):
        if v.i + v.o != 1:
            continue
        if v.o:
            end = g.bottom[g.outputs[n][0]]
            if end.kind == "vertex":
                return n, end.index, True, end.port
        else:
            end = g.top[g.inputs[n][0]]
            if end.kind == "vertex":
                return n, end.index, False, end.port
    return None


def remove_leaf(buf: DiagramBuffer, n: int) -> tuple[int, bool, int, tuple]:
    """Delete leaf ``n`` and its wire.

    Returns ``(host ident, above, port, removed vertex)`` so that
    :func:`insert_leaf` can put it back.
    """
    leaf, host, above, port = _leaf_at(buf, n)
    if above:
        remove_wire(buf, leaf, 0, host, port)
    else:
        remove_wire(buf, host, port, leaf, 0)
    return buf.ident[host], above, port, buf.pop(leaf)


def _leaf_at(buf: DiagramBuffer, n: int) -> tuple[int, int, bool, int]:
    g = extract_graph(buf.freeze())
    if buf.i[n] + buf.o[n] != 1:
        raise ValueError(f"vertex {n} is not a leaf")
    if buf.o[n]:
        end = g.bottom[g.outputs[n][0]]
        above = True
    else:
        end = g.top[g.inputs[n][0]]
        above = False
    if end.kind != "vertex":
        raise ValueError(f"vertex {n} hangs off the boundary")
    return n, end.index, above, end.port


# ----------------------------------------------------------- fast engine


def _peel(buf: DiagramBuffer) -> list:
    """Strip leaves and eliminable edges off a closed connected diagram, returning the undo log."""
    log = []
    while True:
        emb = Embedding(buf.freeze())
        if emb.edge_count == 0:
            return log
        leaves = emb.leaves()
        if leaves:
            log.append(("leaf",) + remove_leaf(buf, leaves[0]))
            continue
        face = _pick_simple_face(emb)
        start = eliminable_edges(face)[0]
        e = face.darts[start] // 2
        a, b = emb.wiring.top[e], emb.wiring.bottom[e]
        remove_wire(buf, a.index, a.port, b.index, b.port)
        log.append(("edge", buf.ident[a.index], a.port, buf.ident[b.index], b.port))


def _pick_simple_face(emb: Embedding):
    best = None
    for f in emb.faces:
        if emb.is_simple(f) and (best is None or len(f) < len(best)):
            best = f
    if best is None:
        raise RuntimeError("leafless connected diagram without a simple face")
    return best


def _restore(buf: DiagramBuffer, log: list) -> None:
    for entry in reversed(log):
        if entry[0] == "leaf":
            _, host_id, above, port, (h, i, o, label, ident) = entry
            insert_leaf(buf, buf.index_of(host_id), above, port, label, ident)
        else:
            _, u_id, out_port, v_id, in_port = entry
            route_wire(buf, buf.index_of(u_id), out_port, buf.index_of(v_id), in_port)


def normalize_closed_connected(buf: DiagramBuffer) -> None:
    """Bring a closed connected diagram to right normal form in place."""
    log = _peel(buf)
    # A connected diagram without wires has at most one vertex, already normal.
    _restore(buf, log)


def normalize_fast(d: Diagram, side: str = "right") -> Diagram:
    """Normal form of a boundary-connected diagram via peeling and re-insertion.

    Byte-identical to :func:`normalize_naive` on every boundary-connected
    input.  Raises :class:`NotBoundaryConnected` otherwise.
    """
    if side == "left":
        return mirror(normalize_fast(mirror(d), "right"))
    if side != "right":
        raise ValueError("side must be 'right' or 'left'")
    if connectivity(d) == "disconnected":
        raise NotBoundaryConnected()
    if d.height == 0:
        return d
    floating = floating_component(d)
    if floating is not None:
        # The component keeps its offset; normalize it on its own.
        offset, inner = floating
        buf = DiagramBuffer(inner)
        normalize_closed_connected(buf)
        out = buf.freeze()
        out = Diagram(d.source_count, tuple(v._replace(h=v.h + offset) for v in out.vertices))
    else:
        buf = DiagramBuffer(boundary_closure(d))
        normalize_closed_connected(buf)
        closed = buf.freeze()
        if closed.vertices[0].label != TOP_LABEL or closed.vertices[-1].label != BOTTOM_LABEL:
            raise RuntimeError("closure vertices moved during normalization")
        out = strip_closure(closed)
    # Normality of the closure carries over; the sweep is a safety net.
    return normalize_naive(out).result
