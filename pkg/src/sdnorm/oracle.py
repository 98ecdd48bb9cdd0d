"""Brute-force reference procedures used to check the fast algorithms.

Nothing here is clever: equivalence is decided by exploring every diagram
reachable through left and right exchanges, and test corpora are built by
exhaustive enumeration.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Iterator, Optional

from .diagram import (
    Diagram,
    Vertex,
    admits_left,
    admits_right,
    apply_left,
    apply_right,
    boundary_vertices,
    connectivity,
    serialize,
)
from .errors import NodeCapExceeded

DEFAULT_NODE_CAP = 2_000_000


def _key(d: Diagram) -> bytes:
    return serialize(d).encode()


def _neighbours(d: Diagram):
    for n in range(d.height - 1):
        if admits_right(d, n):
            yield ("R", n), apply_right(d, n)
        if admits_left(d, n):
            yield ("L", n), apply_left(d, n)


def equivalence_class(d: Diagram, node_cap: int = DEFAULT_NODE_CAP) -> list[Diagram]:
    """Every diagram reachable from ``d`` by exchanges, in breadth-first order."""
    seen = {_key(d)}
    out = [d]
    queue = deque([d])
    while queue:
        cur = queue.popleft()
        for _, nxt in _neighbours(cur):
            k = _key(nxt)
            if k not in seen:
                if len(seen) >= node_cap:
                    raise NodeCapExceeded(node_cap)
                seen.add(k)
                out.append(nxt)
                queue.append(nxt)
    return out


def bfs_equiv(
    d1: Diagram, d2: Diagram, node_cap: int = DEFAULT_NODE_CAP, witness: bool = False
):
    """Decide equivalence by breadth-first search over exchanges.

    Returns a bool, or with ``witness=True`` a pair ``(verdict, steps)``
    where ``steps`` turns ``d1`` into ``d2``.  Raises
    :class:`NodeCapExceeded` when the reachable set grows past ``node_cap``.
    """
    if (d1.source_count, d1.target_count) != (d2.source_count, d2.target_count) or sorted(
        (v.i, v.o, v.label or "") for v in d1
    ) != sorted((v.i, v.o, v.label or "") for v in d2):
        return (False, None) if witness else False
    goal = _key(d2)
    start = _key(d1)
    parent = {start: None}
    queue = deque([d1])
    found = start == goal
    while queue and not found:
        cur = queue.popleft()
        ck = _key(cur)
        for step, nxt in _neighbours(cur):
            k = _key(nxt)
            if k in parent:
                continue
            if len(parent) >= node_cap:
                raise NodeCapExceeded(node_cap)
            parent[k] = (ck, step)
            if k == goal:
                found = True
                break
            queue.append(nxt)
    if not witness:
        return found
    if not found:
        return False, None
    steps = []
    k = goal
    while parent[k] is not None:
        k, step = parent[k]
        steps.append(step)
    return True, steps[::-1]


def _vertex_choices(width: int, max_arity: int, max_wires: int):
    for i in range(min(max_arity, width) + 1):
        for o in range(max_arity + 1):
            if width - i + o > max_wires:
                continue
            for h in range(width - i + 1):
                yield Vertex(h, i, o)


def enumerate_diagrams(
    max_vertices: int,
    max_arity: int,
    max_wires: int,
    source_counts: Optional[range] = None,
    closed: bool = False,
) -> Iterator[Diagram]:
    """All valid unlabelled diagrams within the given bounds.

    Bounds: at most ``max_vertices`` vertices, every arity at most
    ``max_arity``, and at most ``max_wires`` wires at every level.  Diagrams
    come out grouped by vertex count, then by source count, then in
    lexicographic order of their ``(h, i, o)`` slices.  With ``closed`` only
    diagrams without boundary wires are produced.
    """
    sources = source_counts if source_counts is not None else range(max_wires + 1)
    if closed:
        sources = [0]
    for v in range(max_vertices + 1):
        for s in sources:
            yield from _extend(Diagram(s), s, v, max_arity, max_wires, closed)


def _extend(d: Diagram, width: int, remaining: int, max_arity: int, max_wires: int, closed: bool):
    if remaining == 0:
        if not closed or width == 0:
            yield d
        return
    if closed and width > remaining * max_arity:
        return
    for vert in _vertex_choices(width, max_arity, max_wires):
        yield from _extend(
            Diagram(d.source_count, d.vertices + (vert,)),
            width - vert.i + vert.o,
            remaining - 1,
            max_arity,
            max_wires,
            closed,
        )


def random_diagram(
    rng: random.Random,
    vertices: int,
    max_arity: int = 2,
    max_sources: int = 2,
    max_wires: Optional[int] = None,
    labels: Optional[list] = None,
) -> Diagram:
    """Uniform choice of each slice in turn among those keeping the diagram valid."""
    s = rng.randint(0, max_sources)
    width = s
    vs = []
    for _ in range(vertices):
        choices = []
        for i in range(min(max_arity, width) + 1):
            for o in range(max_arity + 1):
                if max_wires is not None and width - i + o > max_wires:
                    continue
                choices.append((i, o))
        i, o = rng.choice(choices)
        h = rng.randint(0, width - i)
        vs.append(Vertex(h, i, o, rng.choice(labels) if labels else None))
        width += o - i
    return Diagram(s, tuple(vs))


def random_connected_diagram(
    rng: random.Random,
    vertices: int,
    max_arity: int = 2,
    max_sources: int = 0,
    labels: Optional[list] = None,
) -> Diagram:
    """Random connected diagram: after the first vertex each one eats at least one inner wire.

    Wires coming from the top boundary are never consumed alone, so every
    vertex hangs off an earlier one.  The result has exactly ``vertices``
    vertices.
    """
    s = rng.randint(0, max_sources)
    kinds = ["b"] * s  # "b" boundary wire, "v" wire produced by a vertex
    vs = []
    for n in range(vertices):
        if n == 0:
            i = rng.randint(0, min(max_arity, len(kinds)))
            o = rng.randint(1 if vertices > 1 else 0, max_arity)
            h = rng.randint(0, len(kinds) - i)
        else:
            inner = [p for p, k in enumerate(kinds) if k == "v"]
            while True:
                i = rng.randint(1, max_arity)
                o = rng.randint(0, max_arity)
                p = rng.choice(inner)
                h = p - rng.randint(0, i - 1)
                if 0 <= h and h + i <= len(kinds):
                    break
            inner_left = len(inner) - kinds[h:h + i].count("v")
            if inner_left + o == 0 and n < vertices - 1:
                o = 1
        vs.append(Vertex(h, i, o, rng.choice(labels) if labels else None))
        kinds = kinds[:h] + ["v"] * o + kinds[h + i:]
    d = Diagram(s, tuple(vs))
    assert connectivity(d) == "connected"
    return d


def random_boundary_connected_diagram(
    rng: random.Random,
    vertices: int,
    pieces: int = 2,
    max_arity: int = 2,
    labels: Optional[list] = None,
) -> Diagram:
    """Connected pieces that each touch the boundary, set side by side, then shuffled by random exchanges."""
    pieces = max(1, min(pieces, vertices))
    sizes = [1] * pieces
    for _ in range(vertices - pieces):
        sizes[rng.randrange(pieces)] += 1
    verts: list = []
    source = offset = 0
    for size in sizes:
        while True:
            piece = random_connected_diagram(rng, size, max_arity, max_sources=2, labels=labels)
            if boundary_vertices(piece):
                break
        # everything already placed ends left of this piece
        verts.extend(v._replace(h=v.h + offset) for v in piece.vertices)
        source += piece.source_count
        offset += piece.target_count
    d = Diagram(source, tuple(verts))
    for _ in range(3 * d.height):
        moves = list(_neighbours(d))
        if not moves:
            break
        d = rng.choice(moves)[1]
    return d


def brute_force_isomorphic(m1, m2) -> bool:
    """Map isomorphism by backtracking over dart bijections (small maps only).

    Darts of ``m1`` are assigned in index order; each partial assignment must
    commute with ``x`` and ``y`` wherever both ends are already assigned and
    keep marks and labels.
    """
    n = m1.dart_count
    if n != m2.dart_count:
        return False
    phi = [-1] * n
    used = [False] * n

    def consistent(d: int) -> bool:
        e = phi[d]
        if m1.flag(d) != m2.flag(e) or m1.label(d) != m2.label(e):
            return False
        for perm1, perm2 in ((m1.x, m2.x), (m1.y, m2.y)):
            if phi[perm1[d]] != -1 and phi[perm1[d]] != perm2[e]:
                return False
        for a in range(n):
            if phi[a] != -1:
                if m1.x[a] == d and m2.x[phi[a]] != e:
                    return False
                if m1.y[a] == d and m2.y[phi[a]] != e:
                    return False
        return True

    def search(d: int) -> bool:
        if d == n:
            return True
        for e in range(n):
            if used[e]:
                continue
            phi[d], used[e] = e, True
            if consistent(d) and search(d + 1):
                return True
            phi[d], used[e] = -1, False
        return False

    return search(0)
