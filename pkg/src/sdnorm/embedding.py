"""Rotation system of a closed diagram, face walks and mountain ranges.

Every wire contributes two darts: ``2 * e`` sits at its upper endpoint
(an output port) and ``2 * e + 1`` at its lower endpoint (an input port).
Faces are walked with the face on the right-hand side, so bounded faces
are traversed clockwise in drawing coordinates (left to right, top to
bottom).  A U-turn counts ``+1`` when it bends clockwise and ``-1``
otherwise; passing straight through a vertex counts ``0``.  With these
conventions a bounded face accumulates ``+2`` and the outer face ``-2``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, extract_graph


@dataclass(frozen=True)
class Face:
    darts: tuple  # leaving darts in walk order
    vertices: tuple  # vertex reached at the end of each dart
    turns: tuple  # rotation number at each of those vertices

    @property
    def total(self) -> int:
        return sum(self.turns)

    def __len__(self) -> int:
        return len(self.darts)


class Embedding:
    """Planar rotation system read off a closed diagram."""

    def __init__(self, d: Diagram):
        if not d.is_closed():
            raise ValueError("face walks need a closed diagram; apply boundary_closure first")
        self.diagram = d
        g = extract_graph(d)
        self.wiring = g
        self.edge_count = len(g)
        # dart -> (vertex, is_input, port)
        self.dart_vertex = [0] * (2 * len(g))
        self.dart_is_input = [False] * (2 * len(g))
        self.dart_port = [0] * (2 * len(g))
        for e in range(len(g)):
            a, b = g.top[e], g.bottom[e]
            self.dart_vertex[2 * e], self.dart_port[2 * e] = a.index, a.port
            self.dart_vertex[2 * e + 1], self.dart_port[2 * e + 1] = b.index, b.port
            self.dart_is_input[2 * e + 1] = True
        # counterclockwise cyclic order: outputs left to right, then inputs right to left
        self.ccw = []
        for n in range(d.height):
            around = [2 * e for e in g.outputs[n]] + [2 * e + 1 for e in reversed(g.inputs[n])]
            self.ccw.append(around)
        self.ccw_index = {}
        for around in self.ccw:
            for k, dart in enumerate(around):
                self.ccw_index[dart] = k
        self._faces = None

    def degree(self, n: int) -> int:
        return len(self.ccw[n])

    def next_dart(self, arriving: int) -> int:
        around = self.ccw[self.dart_vertex[arriving]]
        return around[(self.ccw_index[arriving] + 1) % len(around)]

    def rotation(self, arriving: int, leaving: int) -> int:
        """Rotation number of the turn from ``arriving`` to ``leaving`` at their shared vertex."""
        if arriving == leaving:
            return -1  # turning around a leaf
        a_in, b_in = self.dart_is_input[arriving], self.dart_is_input[leaving]
        if a_in != b_in:
            return 0
        a, b = self.dart_port[arriving], self.dart_port[leaving]
        if a_in:
            return 1 if a > b else -1
        return 1 if a < b else -1

    @property
    def faces(self) -> list[Face]:
        if self._faces is None:
            self._faces = self._walk_faces()
        return self._faces

    def _walk_faces(self) -> list[Face]:
        seen = [False] * (2 * self.edge_count)
        faces = []
        for start in range(2 * self.edge_count):
            if seen[start]:
                continue
            darts, verts, turns = [], [], []
            d = start
            while not seen[d]:
                seen[d] = True
                arriving = d ^ 1
                nxt = self.next_dart(arriving)
                darts.append(d)
                verts.append(self.dart_vertex[arriving])
                turns.append(self.rotation(arriving, nxt))
                d = nxt
            faces.append(Face(tuple(darts), tuple(verts), tuple(turns)))
        return faces

    def is_outer(self, face: Face) -> bool:
        return face.total < 0

    def is_simple(self, face: Face) -> bool:
        """Bounded face whose boundary walk never revisits a vertex."""
        return face.total > 0 and len(set(face.vertices)) == len(face.vertices)

    def simple_faces(self) -> list[Face]:
        return [f for f in self.faces if self.is_simple(f)]

    def leaves(self) -> list[int]:
        return [n for n in range(self.diagram.height) if len(self.ccw[n]) == 1]


def mountain_range(face: Face, start: int) -> list[int]:
    """Partial sums of rotation numbers around ``face`` beginning with its ``start``-th dart."""
    k = len(face)
    out = [0]
    for step in range(k):
        out.append(out[-1] + face.turns[(start + step) % k])
    return out


def is_eliminable(face: Face, start: int) -> bool:
    """An edge is eliminable when its mountain range stays above zero after the first step."""
    return min(mountain_range(face, start)[1:]) > 0


def eliminable_edges(face: Face) -> list[int]:
    """Indices (into ``face.darts``) of the eliminable edges of a simple face."""
    return [s for s in range(len(face)) if is_eliminable(face, s)]
