"""Drawings of diagrams as SVG, TikZ or plain text.

Layout: level ``k`` sits at ``y = 16 + 32 k``, vertex ``n`` halfway between
levels ``n`` and ``n + 1``.  Wires on a level are 24 units apart and
centred.  A vertex is centred between its input and output ports.
"""
from __future__ import annotations

from .diagram import Diagram, extract_graph

LEVEL_PITCH = 32
WIRE_PITCH = 24
RADIUS = 3
MARGIN = 16


def layout(d: Diagram):
    """Return ``(width, height, wires, vertices)``.

    ``wires`` is a list of point lists (one polyline per wire) and
    ``vertices`` a list of ``(x, y, label)``.
    """
    widths = d.widths()
    span = max(widths + [1])
    width = WIRE_PITCH * (span + 1)
    height = LEVEL_PITCH * (d.height + 1)
    mid = width / 2

    def wire_x(level, k):
        return mid + (k - (widths[level] - 1) / 2) * WIRE_PITCH

    def level_y(level):
        return MARGIN + LEVEL_PITCH * level

    vpos = []
    for n, v in enumerate(d.vertices):
        xs = []
        if v.i:
            xs.append(sum(wire_x(n, v.h + j) for j in range(v.i)) / v.i)
        if v.o:
            xs.append(sum(wire_x(n + 1, v.h + j) for j in range(v.o)) / v.o)
        x = sum(xs) / len(xs) if xs else wire_x(n, v.h) - WIRE_PITCH / 2
        vpos.append((x, level_y(n) + LEVEL_PITCH / 2, v.label))

    g = extract_graph(d)
    wires = []
    for e in range(len(g)):
        pts = []
        top, bottom = g.top[e], g.bottom[e]
        if top.kind == "source":
            pts.append((wire_x(0, top.index), 0.0))
        else:
            pts.append(vpos[top.index][:2])
        for off, k in enumerate(g.track[e]):
            pts.append((wire_x(g.first_level[e] + off, k), level_y(g.first_level[e] + off)))
        if bottom.kind == "target":
            pts.append((pts[-1][0], float(height)))
        else:
            pts.append(vpos[bottom.index][:2])
        wires.append(_drop_collinear(pts))
    return width, height, wires, vpos


def _drop_collinear(pts):
    out = [pts[0]]
    for p, q in zip(pts[1:], pts[2:]):
        a = out[-1]
        if (p[0] - a[0]) * (q[1] - a[1]) != (p[1] - a[1]) * (q[0] - a[0]):
            out.append(p)
    out.append(pts[-1])
    return out


def _num(v: float) -> str:
    return f"{v:g}"


def to_svg(d: Diagram) -> str:
    width, height, wires, verts = layout(d)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        '<g fill="none" stroke="black" stroke-width="1.5">',
    ]
    for pts in wires:
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        lines.append(f'<polyline points="{coords}"/>')
    lines.append("</g>")
    lines.append('<g fill="black">')
    for x, y, label in verts:
        lines.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{RADIUS}"/>')
        if label:
            lines.append(f'<text x="{_num(x + 6)}" y="{_num(y - 4)}" font-size="10">{_escape(label)}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def to_tikz(d: Diagram) -> str:
    """TikZ picture drawn with a downward y axis, matching the SVG coordinates."""
    _, _, wires, verts = layout(d)
    lines = ["\\begin{tikzpicture}[x=1pt,y=-1pt]"]
    for pts in wires:
        path = " -- ".join(f"({_num(x)},{_num(y)})" for x, y in pts)
        lines.append(f"  \\draw {path};")
    for x, y, label in verts:
        lines.append(f"  \\fill ({_num(x)},{_num(y)}) circle ({RADIUS}pt);")
        if label:
            lines.append(f"  \\node[right] at ({_num(x)},{_num(y)}) {{{label}}};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def to_ascii(d: Diagram) -> str:
    """Row per level listing the wires, row per vertex showing what it eats and makes."""
    widths = d.widths()
    out = [" ".join("|" for _ in range(widths[0])) or "."]
    for n, v in enumerate(d.vertices):
        cells = ["|"] * widths[n]
        name = v.label or "o"
        row = cells[:v.h] + [f"[{name} {v.i}>{v.o}]"] + cells[v.h + v.i:]
        out.append(" ".join(row))
        out.append(" ".join("|" for _ in range(widths[n + 1])) or ".")
    return "\n".join(out) + "\n"


def render(d: Diagram, fmt: str = "svg") -> str:
    if fmt == "svg":
        return to_svg(d)
    if fmt == "tikz":
        return to_tikz(d)
    if fmt == "ascii":
        return to_ascii(d)
    raise ValueError(f"unknown format {fmt!r}")
