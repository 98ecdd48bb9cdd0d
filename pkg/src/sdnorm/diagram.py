"""Slice encodings of string diagrams and the exchange moves acting on them.

A diagram is a stack of vertices read from top (sources) to bottom
(targets).  Vertex ``n`` consumes ``i`` consecutive wires starting at
wire ``h`` and puts ``o`` wires in their place.  ``source_count`` is the
number of wires entering at the top.

Positions count from the left, starting at zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import ExchangeNotAdmissible, InvalidDiagram, ParseError
from .unionfind import UnionFind

FORMAT_VERSION = 1


class Vertex(NamedTuple):
    """One slice: position, number of inputs, number of outputs, optional label."""

    h: int
    i: int
    o: int
    label: Optional[str] = None

    @property
    def delta(self) -> int:
        return self.o - self.i


@dataclass(frozen=True)
class Diagram:
    """Immutable slice encoding of a planar string diagram."""

    source_count: int
    vertices: tuple = field(default_factory=tuple)

    def __post_init__(self):
        vs = tuple(v if isinstance(v, Vertex) else Vertex(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def from_slices(cls, source_count: int, slices: Iterable[Sequence], labels=None) -> "Diagram":
        """Build from ``(h, i, o)`` triples, with an optional parallel label list."""
        slices = list(slices)
        if labels is None:
            labels = [s[3] if len(s) > 3 else None for s in slices]
        return cls(source_count, tuple(Vertex(s[0], s[1], s[2], lab) for s, lab in zip(slices, labels)))

    @property
    def height(self) -> int:
        return len(self.vertices)

    @property
    def pos(self) -> list[int]:
        return [v.h for v in self.vertices]

    @property
    def arity_in(self) -> list[int]:
        return [v.i for v in self.vertices]

    @property
    def arity_out(self) -> list[int]:
        return [v.o for v in self.vertices]

    @property
    def labels(self) -> list[Optional[str]]:
        return [v.label for v in self.vertices]

    @property
    def target_count(self) -> int:
        return self.source_count + sum(v.o - v.i for v in self.vertices)

    def widths(self) -> list[int]:
        """Wire counts at every level, ``N + 1`` entries."""
        out = [self.source_count]
        for v in self.vertices:
            out.append(out[-1] + v.o - v.i)
        return out

    def slices(self) -> list[tuple[int, int, int]]:
        return [(v.h, v.i, v.o) for v in self.vertices]

    def is_closed(self) -> bool:
        return self.source_count == 0 and self.target_count == 0

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return serialize(self)


def delta(d: Diagram, n: int) -> int:
    v = d.vertices[n]
    return v.o - v.i


def wires_at(d: Diagram, n: int) -> int:
    """Number of wires at level ``n`` (level 0 is above vertex 0)."""
    if not 0 <= n <= d.height:
        raise IndexError(f"level {n} outside [0, {d.height}]")
    return d.source_count + sum(v.o - v.i for v in d.vertices[:n])


def validate(d: Diagram) -> Diagram:
    """Return ``d`` unchanged, or raise :class:`InvalidDiagram` naming the first bad vertex."""
    if d.source_count < 0:
        raise InvalidDiagram(-1, "negative source count")
    w = d.source_count
    for n, v in enumerate(d.vertices):
        if v.h < 0 or v.i < 0 or v.o < 0:
            raise InvalidDiagram(n, "negative entry")
        if w < v.h + v.i:
            raise InvalidDiagram(n, f"needs {v.h + v.i} wires but only {w} are present")
        if v.label is not None and not isinstance(v.label, str):
            raise InvalidDiagram(n, "label must be a string")
        w += v.o - v.i
    return d


def is_valid(d: Diagram) -> bool:
    try:
        validate(d)
    except InvalidDiagram:
        return False
    return True


def _check_height(d: Diagram, n: int) -> None:
    if not 0 <= n <= d.height - 2:
        raise IndexError(f"exchange height {n} outside [0, {d.height - 2}]")


def admits_right(d: Diagram, n: int) -> bool:
    """True when vertex ``n + 1`` lies entirely right of the outputs of vertex ``n``."""
    _check_height(d, n)
    a, b = d.vertices[n], d.vertices[n + 1]
    return b.h >= a.h + a.o


def admits_left(d: Diagram, n: int) -> bool:
    """True when vertex ``n + 1`` lies entirely left of the outputs of vertex ``n``."""
    _check_height(d, n)
    a, b = d.vertices[n], d.vertices[n + 1]
    return a.h >= b.h + b.i


def apply_right(d: Diagram, n: int) -> Diagram:
    """Swap vertices ``n`` and ``n + 1`` with a right exchange.

    The lower vertex rises above the upper one; since it was to the right of
    the upper vertex's outputs, its position shrinks by the upper vertex's
    wire balance.
    """
    if not admits_right(d, n):
        raise ExchangeNotAdmissible("right", n)
    a, b = d.vertices[n], d.vertices[n + 1]
    vs = list(d.vertices)
    vs[n] = Vertex(b.h - (a.o - a.i), b.i, b.o, b.label)
    vs[n + 1] = Vertex(a.h, a.i, a.o, a.label)
    return Diagram(d.source_count, tuple(vs))


def apply_left(d: Diagram, n: int) -> Diagram:
    """Swap vertices ``n`` and ``n + 1`` with a left exchange."""
    if not admits_left(d, n):
        raise ExchangeNotAdmissible("left", n)
    a, b = d.vertices[n], d.vertices[n + 1]
    vs = list(d.vertices)
    vs[n] = Vertex(b.h, b.i, b.o, b.label)
    vs[n + 1] = Vertex(a.h + (b.o - b.i), a.i, a.o, a.label)
    return Diagram(d.source_count, tuple(vs))


def admissible_exchanges(d: Diagram) -> list[tuple[str, int]]:
    out = []
    for n in range(d.height - 1):
        if admits_right(d, n):
            out.append(("R", n))
        if admits_left(d, n):
            out.append(("L", n))
    return out


def mirror(d: Diagram) -> Diagram:
    """Reflect the diagram left to right.

    Right exchanges of ``d`` become left exchanges of the mirror and vice versa.
    """
    vs = []
    w = d.source_count
    for v in d.vertices:
        vs.append(Vertex(w - v.h - v.i, v.i, v.o, v.label))
        w += v.o - v.i
    return Diagram(d.source_count, tuple(vs))


def relabel(d: Diagram, labels: Sequence[Optional[str]]) -> Diagram:
    return Diagram(d.source_count, tuple(v._replace(label=lab) for v, lab in zip(d.vertices, labels)))


class DiagramBuffer:
    """Mutable copy of a diagram for in-place exchanges.

    Each vertex also carries an integer identity so callers can follow
    vertices through a sequence of moves.
    """

    __slots__ = ("source_count", "h", "i", "o", "label", "ident")

    def __init__(self, d: Diagram, idents: Optional[Sequence[int]] = None):
        self.source_count = d.source_count
        self.h = [v.h for v in d.vertices]
        self.i = [v.i for v in d.vertices]
        self.o = [v.o for v in d.vertices]
        self.label = [v.label for v in d.vertices]
        self.ident = list(idents) if idents is not None else list(range(d.height))

    def __len__(self) -> int:
        return len(self.h)

    def copy(self) -> "DiagramBuffer":
        new = DiagramBuffer.__new__(DiagramBuffer)
        new.source_count = self.source_count
        for name in ("h", "i", "o", "label", "ident"):
            setattr(new, name, list(getattr(self, name)))
        return new

    def admits_right(self, n: int) -> bool:
        return self.h[n + 1] >= self.h[n] + self.o[n]

    def admits_left(self, n: int) -> bool:
        return self.h[n] >= self.h[n + 1] + self.i[n + 1]

    def _swap(self, n: int) -> None:
        for arr in (self.i, self.o, self.label, self.ident):
            arr[n], arr[n + 1] = arr[n + 1], arr[n]

    def right(self, n: int) -> None:
        """In-place right exchange at height ``n``; admissibility is the caller's job."""
        h, i, o = self.h, self.i, self.o
        h[n], h[n + 1] = h[n + 1] - (o[n] - i[n]), h[n]
        self._swap(n)

    def left(self, n: int) -> None:
        h, i, o = self.h, self.i, self.o
        h[n], h[n + 1] = h[n + 1], h[n] + (o[n + 1] - i[n + 1])
        self._swap(n)

    def insert(self, n: int, h: int, i: int, o: int, label=None, ident: int = -1) -> None:
        self.h.insert(n, h)
        self.i.insert(n, i)
        self.o.insert(n, o)
        self.label.insert(n, label)
        self.ident.insert(n, ident)

    def pop(self, n: int) -> tuple:
        return (self.h.pop(n), self.i.pop(n), self.o.pop(n), self.label.pop(n), self.ident.pop(n))

    def index_of(self, ident: int) -> int:
        return self.ident.index(ident)

    def freeze(self) -> Diagram:
        return Diagram(self.source_count, tuple(map(Vertex, self.h, self.i, self.o, self.label)))


# ---------------------------------------------------------------- wiring


class End(NamedTuple):
    """Endpoint of a wire: ``kind`` is ``"source"``, ``"vertex"`` or ``"target"``."""

    kind: str
    index: int
    port: int = 0


@dataclass
class Wiring:
    """The wires of a diagram with both endpoints and their track across levels.

    ``track[e]`` lists the wire's position at each level it crosses, starting
    at ``first_level[e]``.  ``outputs[n][j]`` and ``inputs[n][j]`` give the wire
    attached to output ``j`` and input ``j`` of vertex ``n``.
    """

    top: list
    bottom: list
    first_level: list
    track: list
    outputs: list
    inputs: list
    sources: list
    targets: list

    def __len__(self) -> int:
        return len(self.top)


def extract_graph(d: Diagram) -> Wiring:
    """Trace every wire of ``d`` from its upper endpoint to its lower one."""
    top, bottom, first, track = [], [], [], []
    outputs = [[] for _ in d.vertices]
    inputs = [[] for _ in d.vertices]

    def new(end, level):
        top.append(end)
        bottom.append(None)
        first.append(level)
        track.append([])
        return len(top) - 1

    current = [new(End("source", k), 0) for k in range(d.source_count)]
    sources = list(current)
    for n, v in enumerate(d.vertices):
        for p, e in enumerate(current):
            track[e].append(p)
        consumed = current[v.h:v.h + v.i]
        for j, e in enumerate(consumed):
            bottom[e] = End("vertex", n, j)
        inputs[n] = consumed
        made = [new(End("vertex", n, j), n + 1) for j in range(v.o)]
        outputs[n] = made
        current = current[:v.h] + made + current[v.h + v.i:]
    for p, e in enumerate(current):
        track[e].append(p)
        bottom[e] = End("target", p)
    return Wiring(top, bottom, first, track, outputs, inputs, sources, list(current))


def vertex_adjacency(d: Diagram) -> list[list[int]]:
    """Neighbouring vertex indices for each vertex (with multiplicity)."""
    g = extract_graph(d)
    adj = [[] for _ in d.vertices]
    for a, b in zip(g.top, g.bottom):
        if a.kind == "vertex" and b.kind == "vertex":
            adj[a.index].append(b.index)
            adj[b.index].append(a.index)
    return adj


def components(d: Diagram) -> list[list[int]]:
    """Vertex index lists of connected components, ordered by their topmost vertex."""
    uf = UnionFind(range(d.height))
    g = extract_graph(d)
    for a, b in zip(g.top, g.bottom):
        if a.kind == "vertex" and b.kind == "vertex":
            uf.union(a.index, b.index)
    groups: dict[int, list[int]] = {}
    for n in range(d.height):
        groups.setdefault(uf.find(n), []).append(n)
    return sorted(groups.values(), key=lambda c: c[0])


def boundary_vertices(d: Diagram) -> set[int]:
    """Vertices with at least one wire running to the top or bottom boundary."""
    g = extract_graph(d)
    out = set()
    for a, b in zip(g.top, g.bottom):
        if a.kind == "vertex" and b.kind == "target":
            out.add(a.index)
        if b.kind == "vertex" and a.kind == "source":
            out.add(b.index)
    return out


def connectivity(d: Diagram) -> str:
    """One of ``"connected"``, ``"boundary_connected"`` or ``"disconnected"``.

    A diagram with at most one component is connected.  It is
    boundary-connected when every component touches the boundary.
    """
    comps = components(d)
    if len(comps) <= 1:
        return "connected"
    touching = boundary_vertices(d)
    if all(any(n in touching for n in c) for c in comps):
        return "boundary_connected"
    return "disconnected"


def is_connected(d: Diagram) -> bool:
    return connectivity(d) == "connected"


def is_boundary_connected(d: Diagram) -> bool:
    return connectivity(d) != "disconnected"


# ---------------------------------------------------------- serialization


def serialize(d: Diagram) -> str:
    """Line-oriented text form: a version line, ``S <count>``, then one ``V`` line per vertex."""
    lines = [f"sd {FORMAT_VERSION}", f"S {d.source_count}"]
    for v in d.vertices:
        tail = f" {v.label}" if v.label is not None else ""
        lines.append(f"V {v.h} {v.i} {v.o}{tail}")
    return "\n".join(lines) + "\n"


def _int(tok: str, line: int, what: str) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {tok!r}") from None
    if val < 0:
        raise ParseError(line, f"{what} must be non-negative")
    return val


def deserialize(text: str, check: bool = True) -> Diagram:
    """Parse the text form produced by :func:`serialize`.

    Blank lines and ``#`` comments are ignored.  Structural problems raise
    :class:`ParseError` with the offending line number.
    """
    source = None
    seen_header = False
    vs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not seen_header:
            if toks[0] != "sd" or len(toks) != 2:
                raise ParseError(lineno, "expected header 'sd <version>'")
            if toks[1] != str(FORMAT_VERSION):
                raise ParseError(lineno, f"unsupported format version {toks[1]}")
            seen_header = True
        elif toks[0] == "S":
            if source is not None or len(toks) != 2:
                raise ParseError(lineno, "expected a single 'S <count>' line")
            source = _int(toks[1], lineno, "source count")
        elif toks[0] == "V":
            if source is None:
                raise ParseError(lineno, "vertex line before 'S' line")
            if len(toks) not in (4, 5):
                raise ParseError(lineno, "expected 'V h i o [label]'")
            h, i, o = (_int(t, lineno, name) for t, name in zip(toks[1:4], "hio"))
            vs.append(Vertex(h, i, o, toks[4] if len(toks) == 5 else None))
        else:
            raise ParseError(lineno, f"unknown record {toks[0]!r}")
    if not seen_header:
        raise ParseError(1, "empty input")
    if source is None:
        raise ParseError(1, "missing 'S' line")
    d = Diagram(source, tuple(vs))
    if check:
        validate(d)
    return d


def to_json(d: Diagram) -> str:
    verts = []
    for v in d.vertices:
        item = {"h": v.h, "i": v.i, "o": v.o}
        if v.label is not None:
            item["label"] = v.label
        verts.append(item)
    return json.dumps({"s": d.source_count, "vertices": verts})


def from_json(text: str, check: bool = True) -> Diagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    try:
        vs = tuple(Vertex(int(v["h"]), int(v["i"]), int(v["o"]), v.get("label")) for v in obj["vertices"])
        d = Diagram(int(obj["s"]), vs)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(1, f"malformed diagram object: {exc}") from None
    if check:
        validate(d)
    return d


def load(text: str) -> Diagram:
    """Parse either the text or the JSON form, guessing from the first character."""
    return from_json(text) if text.lstrip().startswith("{") else deserialize(text)


def serialize_trace(steps: Iterable[tuple[str, int]]) -> str:
    return "".join(f"{side} {n}\n" for side, n in steps)


def parse_trace(text: str) -> list[tuple[str, int]]:
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2 or toks[0] not in ("R", "L"):
            raise ParseError(lineno, "expected 'R <h>' or 'L <h>'")
        steps.append((toks[0], _int(toks[1], lineno, "height")))
    return steps


def replay(d: Diagram, steps: Iterable[tuple[str, int]]) -> Diagram:
    """Apply a sequence of exchanges, raising if any step is not admissible."""
    for side, n in steps:
        d = apply_right(d, n) if side == "R" else apply_left(d, n)
    return d
