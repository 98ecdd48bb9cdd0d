"""Algebraic terms over a signature of generators, and their diagrams.

Syntax::

    expr   := expr "." tensor | tensor        g . f  means f first, then g
    tensor := tensor "*" atom | atom          f * g  puts f left of g
    atom   := NAME | "id" "(" INT ")" | "(" expr ")"

Both operators associate to the left and ``*`` binds tighter than ``.``.
A signature file has one ``G <name> <inputs> <outputs>`` line per generator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .diagram import Diagram, Vertex
from .errors import CompositionMismatch, ParseError, UnknownGenerator


@dataclass(frozen=True)
class Generator:
    name: str
    arity_in: int
    arity_out: int


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Id:
    n: int


@dataclass(frozen=True)
class Compose:
    """``after . before``: ``before`` is applied first and drawn on top."""

    after: "Expr"
    before: "Expr"


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


Expr = Union[Gen, Id, Compose, Tensor]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def parse_signature(text: str) -> dict[str, Generator]:
    sig: dict[str, Generator] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 4 or toks[0] != "G":
            raise ParseError(lineno, "expected 'G <name> <inputs> <outputs>'")
        name = toks[1]
        if not _NAME.match(name) or name == "id":
            raise ParseError(lineno, f"bad generator name {name!r}")
        if name in sig:
            raise ParseError(lineno, f"generator {name!r} declared twice")
        try:
            a, b = int(toks[2]), int(toks[3])
        except ValueError:
            raise ParseError(lineno, "arities must be integers") from None
        if a < 0 or b < 0:
            raise ParseError(lineno, "arities must be non-negative")
        sig[name] = Generator(name, a, b)
    return sig


def signature_text(sig: dict[str, Generator]) -> str:
    return "".join(f"G {g.name} {g.arity_in} {g.arity_out}\n" for g in sig.values())


# ----------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[.*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        while text[pos].isspace():
            pos += 1
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(1, f"unexpected character {text[pos]!r} at column {pos + 1}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, value=None, kind=None):
        tok = self.toks[self.k]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(1, f"expected {want!r} at column {tok[2]}, found {got!r}")
        self.k += 1
        return tok

    def expr(self) -> Expr:
        node = self.tensor()
        while self.peek()[1] == ".":
            self.take(".")
            node = Compose(node, self.tensor())
        return node

    def tensor(self) -> Expr:
        node = self.atom()
        while self.peek()[1] == "*":
            self.take("*")
            node = Tensor(node, self.atom())
        return node

    def atom(self) -> Expr:
        kind, val, col = self.peek()
        if val == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if kind == "name" and val == "id":
            self.take()
            self.take("(")
            n = int(self.take(kind="int")[1])
            self.take(")")
            return Id(n)
        if kind == "name":
            self.take()
            return Gen(val)
        raise ParseError(1, f"expected a term at column {col}, found {val or 'end of input'!r}")


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    p.take(kind="end")
    return node


def pretty(e: Expr) -> str:
    """Shortest text that parses back to ``e``."""
    if isinstance(e, Gen):
        return e.name
    if isinstance(e, Id):
        return f"id({e.n})"
    if isinstance(e, Tensor):
        left = pretty(e.left) if not isinstance(e.left, Compose) else f"({pretty(e.left)})"
        right = pretty(e.right) if isinstance(e.right, (Gen, Id)) else f"({pretty(e.right)})"
        return f"{left} * {right}"
    right = pretty(e.before) if not isinstance(e.before, Compose) else f"({pretty(e.before)})"
    return f"{pretty(e.after)} . {right}"


# ----------------------------------------------------------- typing and drawing


def typecheck(e: Expr, sig: dict[str, Generator]) -> tuple[int, int]:
    """Return ``(inputs, outputs)`` of ``e``."""
    if isinstance(e, Gen):
        if e.name not in sig:
            raise UnknownGenerator(e.name)
        g = sig[e.name]
        return g.arity_in, g.arity_out
    if isinstance(e, Id):
        return e.n, e.n
    if isinstance(e, Tensor):
        a, b = typecheck(e.left, sig)
        c, d = typecheck(e.right, sig)
        return a + c, b + d
    a, b = typecheck(e.before, sig)
    c, d = typecheck(e.after, sig)
    if b != c:
        raise CompositionMismatch(expected=c, found=b)
    return a, d


def to_diagram(e: Expr, sig: dict[str, Generator]) -> Diagram:
    """Slice encoding of a term: each generator becomes one vertex."""
    dom, _ = typecheck(e, sig)
    verts: list[Vertex] = []

    def walk(node: Expr, offset: int) -> None:
        if isinstance(node, Gen):
            g = sig[node.name]
            verts.append(Vertex(offset, g.arity_in, g.arity_out, g.name))
        elif isinstance(node, Compose):
            walk(node.before, offset)
            walk(node.after, offset)
        elif isinstance(node, Tensor):
            walk(node.left, offset)
            walk(node.right, offset + typecheck(node.left, sig)[1])

    walk(e, 0)
    return Diagram(dom, tuple(verts))


def _vertex_name(v: Vertex) -> str:
    return v.label if v.label is not None else f"g{v.i}_{v.o}"


def signature_of(d: Diagram) -> dict[str, Generator]:
    """Signature read off a diagram; unlabelled vertices get names ``g<i>_<o>``."""
    sig: dict[str, Generator] = {}
    for v in d.vertices:
        name = _vertex_name(v)
        g = Generator(name, v.i, v.o)
        if sig.setdefault(name, g) != g:
            raise ValueError(f"label {name!r} is used with two different arities")
    return sig


def from_diagram(d: Diagram) -> Expr:
    """A term whose diagram is ``d``: one layer ``id * g * id`` per vertex."""
    width = d.source_count
    layers = []
    for v in d.vertices:
        parts: list = []
        if v.h:
            parts.append(Id(v.h))
        parts.append(Gen(_vertex_name(v)))
        rest = width - v.h - v.i
        if rest:
            parts.append(Id(rest))
        layer = parts[0]
        for p in parts[1:]:
            layer = Tensor(layer, p)
        layers.append(layer)
        width += v.o - v.i
    if not layers:
        return Id(d.source_count)
    expr = layers[0]
    for layer in layers[1:]:
        expr = Compose(layer, expr)
    return expr
