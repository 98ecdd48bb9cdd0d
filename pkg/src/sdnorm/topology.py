"""Faces, components and the structural tree of a closed diagram.

A *spot* ``(h, k)`` is the gap left of wire ``k`` at level ``h`` (``k``
ranges over ``0 .. W(h)``).  Spots that touch across a vertex row belong
to the same face; wires and vertices that touch belong to the same
component.  A single top-to-bottom scan with two union-find forests
labels both.

The structural tree alternates faces and components.  A face lists the
components floating inside it as an unordered multiset; a component
records its own normal form and the faces it encloses, ordered by where
they first appear in that normal form.  Two diagrams are equivalent
exactly when their trees are equal, which reduces to comparing byte codes.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional

from .diagram import Diagram, DiagramBuffer, Vertex, serialize
from .normalize import boundary_closure, normalize_closed_connected
from .unionfind import UnionFind


def spot_adjacent(d: Diagram, s1: tuple[int, int], s2: tuple[int, int]) -> bool:
    """Whether spot ``s1`` at level ``h`` touches spot ``s2`` at level ``h + 1`` across vertex ``h``."""
    (h, k), (h2, k2) = s1, s2
    if h2 != h + 1:
        raise ValueError("spots must lie on consecutive levels")
    widths = d.widths()
    if not (0 <= k <= widths[h] and 0 <= k2 <= widths[h2]):
        raise ValueError("spot index out of range")
    v = d.vertices[h]
    return (k == k2 and v.h >= k) or (k + v.o - v.i == k2 and v.h + v.i <= k)


class Topology:
    """Faces and components of a closed diagram.

    Attributes
    ----------
    spot_face : list[list[int]]
        Face id of every spot, row by row.  Face ``0`` is the outer face.
    wire_component : list[list[int]]
        Component id of every wire at every level.
    vertex_component : list[int]
    face_parent : list[Optional[int]]
        Component enclosing each face (``None`` for the outer face).
    component_parent : list[int]
        Face enclosing each component.
    face_corners : list[list[tuple[int, int]]]
        For each face, the ``(vertex, gap)`` pairs of output gaps opening
        into it, in scan order.  Gap ``j`` lies between outputs ``j`` and
        ``j + 1``.
    """

    def __init__(self, d: Diagram):
        if not d.is_closed():
            raise ValueError("topology needs a closed diagram; apply boundary_closure first")
        self.diagram = d
        fu, cu = UnionFind(), UnionFind()
        counter = [0]

        def fresh(uf):
            counter[0] += 1
            uf.add(counter[0])
            return counter[0]

        spot_rows = [[fresh(fu)]]
        wire_rows = [[]]
        vertex_nodes = []
        fresh_spots = []  # (node, vertex, gap)
        for n, v in enumerate(d.vertices):
            above_s, above_w = spot_rows[-1], wire_rows[-1]
            width_above = len(above_w)
            dlt = v.o - v.i
            # components: a vertex joins every wire it consumes
            if v.i == 0:
                vnode = fresh(cu)
            else:
                vnode = above_w[v.h]
                for w in above_w[v.h + 1:v.h + v.i]:
                    vnode = cu.union(vnode, w)
            vertex_nodes.append(vnode)
            row_w = above_w[:v.h] + [vnode] * v.o + above_w[v.h + v.i:]
            row_s = []
            for k in range(width_above + dlt + 1):
                a = above_s[k] if k <= v.h else None
                k0 = k - dlt
                b = above_s[k0] if v.h + v.i <= k0 <= width_above else None
                if a is not None and b is not None:
                    node = fu.union(a, b)
                elif a is not None or b is not None:
                    node = a if a is not None else b
                else:
                    node = fresh(fu)
                    fresh_spots.append((node, n, k - v.h - 1))
                row_s.append(node)
            spot_rows.append(row_s)
            wire_rows.append(row_w)

        # canonical face ids: outer face first, then by first appearance
        face_id = {fu.find(spot_rows[0][0]): 0}
        for node, _, _ in fresh_spots:
            face_id.setdefault(fu.find(node), len(face_id))
        self.face_count = len(face_id)
        self.spot_face = [[face_id[fu.find(x)] for x in row] for row in spot_rows]

        comp_id = {}
        for vnode in vertex_nodes:
            comp_id.setdefault(cu.find(vnode), len(comp_id))
        self.component_count = len(comp_id)
        self.vertex_component = [comp_id[cu.find(x)] for x in vertex_nodes]
        self.wire_component = [[comp_id[cu.find(x)] for x in row] for row in wire_rows]

        self.face_corners = [[] for _ in range(self.face_count)]
        self.face_parent: list = [None] * self.face_count
        for node, n, gap in fresh_spots:
            f = face_id[fu.find(node)]
            self.face_corners[f].append((n, gap))
            if f != 0 and self.face_parent[f] is None:
                self.face_parent[f] = self.vertex_component[n]
        self.component_parent = [0] * self.component_count
        self.component_vertices = [[] for _ in range(self.component_count)]
        for n, c in enumerate(self.vertex_component):
            if not self.component_vertices[c]:
                self.component_parent[c] = self.spot_face[n][d.vertices[n].h]
            self.component_vertices[c].append(n)

    def corner_face(self) -> dict:
        return {corner: f for f, corners in enumerate(self.face_corners) for corner in corners}

    def leftmost_top_spot(self, f: int) -> tuple[int, int]:
        """Leftmost spot on the highest level the face reaches."""
        for h, row in enumerate(self.spot_face):
            if f in row:
                return (h, row.index(f))
        raise KeyError(f)

    def neighbours(self) -> set:
        """Pairs ``(component, face)`` where some wire of the component borders a spot of the face."""
        out = set()
        for srow, wrow in zip(self.spot_face, self.wire_component):
            for k, c in enumerate(wrow):
                out.add((c, srow[k]))
                out.add((c, srow[k + 1]))
        return out

    def enclosed_components(self, f: int) -> list[int]:
        return [c for c, p in enumerate(self.component_parent) if p == f]

    def enclosed_faces(self, c: int) -> list[int]:
        return [f for f, p in enumerate(self.face_parent) if p == c]

    def component_diagram(self, c: int) -> Diagram:
        """Standalone closed diagram made of component ``c``'s vertices."""
        d = self.diagram
        verts = []
        for n in self.component_vertices[c]:
            v = d.vertices[n]
            h = sum(1 for x in self.wire_component[n][:v.h] if x == c)
            verts.append(Vertex(h, v.i, v.o, v.label))
        return Diagram(0, tuple(verts))


# ------------------------------------------------------------ structural tree


@dataclass
class ComponentNode:
    normal_form: Diagram
    faces: list = field(default_factory=list)
    vertices: tuple = field(default=(), compare=False)  # indices in the analysed diagram, in normal-form order

    def code(self) -> bytes:
        parts = [b"C", _lp(serialize(self.normal_form).encode()), struct.pack(">I", len(self.faces))]
        parts.extend(_lp(f.code()) for f in self.faces)
        return b"".join(parts)


@dataclass
class FaceNode:
    components: list = field(default_factory=list)

    def code(self) -> bytes:
        kids = sorted(c.code() for c in self.components)
        return b"".join([b"F", struct.pack(">I", len(kids))] + [_lp(k) for k in kids])


def _lp(b: bytes) -> bytes:
    return struct.pack(">I", len(b)) + b


def build_structural_tree(d: Diagram) -> FaceNode:
    """Structural tree of ``d``, closing it first if it has boundary wires.

    The empty closed diagram gives a face with no components.
    """
    closed = d if d.is_closed() else boundary_closure(d)
    topo = Topology(closed)
    corner_face = topo.corner_face()

    def component(c: int) -> ComponentNode:
        buf = DiagramBuffer(topo.component_diagram(c), topo.component_vertices[c])
        normalize_closed_connected(buf)
        nc = buf.freeze()
        sub = Topology(nc)
        order = sorted(range(1, sub.face_count), key=sub.leftmost_top_spot)
        faces = []
        for f in order:
            n, gap = sub.face_corners[f][0]
            faces.append(face(corner_face[(buf.ident[n], gap)]))
        return ComponentNode(nc, faces, tuple(buf.ident))

    def face(f: int) -> FaceNode:
        kids = [component(c) for c in topo.enclosed_components(f)]
        return FaceNode(sorted(kids, key=ComponentNode.code))

    return face(0)


def tree_code(d: Diagram) -> bytes:
    return build_structural_tree(d).code()


def boundary_signature(d: Diagram) -> tuple[int, int]:
    return (d.source_count, d.target_count)


def decide_equiv_tree(d1: Diagram, d2: Diagram) -> bool:
    """Equivalence of arbitrary diagrams by comparing structural-tree codes."""
    if boundary_signature(d1) != boundary_signature(d2):
        return False
    if sorted((v.i, v.o, v.label or "") for v in d1) != sorted((v.i, v.o, v.label or "") for v in d2):
        return False
    return tree_code(d1) == tree_code(d2)


def dump_tree(node, indent: int = 0) -> str:
    """Indented text rendering of a structural tree."""
    pad = "  " * indent
    if isinstance(node, FaceNode):
        lines = [f"{pad}face ({len(node.components)} components)"]
        lines.extend(dump_tree(c, indent + 1) for c in node.components)
    else:
        body = " ".join(f"({v.h},{v.i},{v.o}{',' + v.label if v.label else ''})" for v in node.normal_form)
        lines = [f"{pad}component {body or '(empty)'}"]
        lines.extend(dump_tree(f, indent + 1) for f in node.faces)
    return "\n".join(lines)
