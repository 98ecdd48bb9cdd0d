"""Command-line front end: ``sdnorm <command> ...``.

Diagrams are read from files (``-`` for stdin) in the text or JSON form.
With ``--signature`` an argument may instead be a term such as
``"m . (f * id(1))"``.  Exit status is 0 for success or "equivalent",
1 for "not equivalent", and 2 for errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from . import diagram as dg
from .equivalence import METHODS, decide_equiv, witness
from .errors import NodeCapExceeded, SdnormError
from .maps import canonical_map_code, dump_map, gamma
from .normalize import boundary_closure, normalize_fast, normalize_naive, spiral, spiral_reduction
from .oracle import DEFAULT_NODE_CAP, bfs_equiv
from .render import render
from .terms import from_diagram, parse_expr, parse_signature, pretty, signature_of, signature_text, to_diagram
from .topology import Topology, build_structural_tree, dump_tree


class UsageError(Exception):
    pass


def _read(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    return Path(arg).read_text()


def _load(arg: str, signature: Optional[str]) -> dg.Diagram:
    """A diagram from a file, or from a term when a signature is given."""
    if signature is not None and not os.path.exists(arg) and arg != "-":
        sig = parse_signature(_read(signature))
        return to_diagram(parse_expr(arg), sig)
    text = _read(arg)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return dg.from_json(text)
    if stripped.startswith("sd"):
        return dg.deserialize(text)
    if signature is None:
        raise UsageError(f"{arg}: not a diagram file (terms need --signature)")
    return to_diagram(parse_expr(text.strip()), parse_signature(_read(signature)))


def _emit(d: dg.Diagram, fmt: str) -> str:
    if fmt == "json":
        return dg.to_json(d) + "\n"
    if fmt == "expr":
        return pretty(from_diagram(d)) + "\n"
    return dg.serialize(d)


def _seed(args) -> Optional[int]:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SDNORM_SEED")
    return int(env) if env else None


# --------------------------------------------------------------- commands


def cmd_equiv(args) -> int:
    d1, d2 = _load(args.first, args.signature), _load(args.second, args.signature)
    same = decide_equiv(d1, d2, args.method)
    print("equivalent" if same else "not equivalent")
    if same and args.witness:
        try:
            sys.stdout.write(dg.serialize_trace(witness(d1, d2)))
        except NodeCapExceeded:
            print("sdnorm: no witness, the exchange search grew too large", file=sys.stderr)
    return 0 if same else 1


def cmd_normalize(args) -> int:
    d = _load(args.diagram, args.signature)
    if args.naive or args.trace:
        red = normalize_naive(d, args.side, args.strategy, _seed(args))
        result = red.result
    else:
        result = normalize_fast(d, args.side)
        red = None
    sys.stdout.write(_emit(result, args.format))
    if args.trace:
        sys.stderr.write(dg.serialize_trace(red.trace))
    return 0


def cmd_render(args) -> int:
    out = render(_load(args.diagram, args.signature), args.format)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_convert(args) -> int:
    d = _load(args.diagram, args.signature)
    sys.stdout.write(_emit(d, args.to))
    if args.to == "expr" and args.emit_signature:
        Path(args.emit_signature).write_text(signature_text(signature_of(d)))
    return 0


def cmd_spiral(args) -> int:
    if args.trace or args.steps:
        red = spiral_reduction(args.n)
        if args.steps:
            print(red.steps)
        if args.trace:
            sys.stdout.write(dg.serialize_trace(red.trace))
        return 0
    sys.stdout.write(_emit(spiral(args.n), args.format))
    return 0


def cmd_stats(args) -> int:
    d = _load(args.diagram, args.signature)
    closed = d if d.is_closed() else boundary_closure(d)
    topo = Topology(closed)
    kind = dg.connectivity(d)
    print(f"vertices {d.height}")
    print(f"sources {d.source_count}")
    print(f"targets {d.target_count}")
    print(f"max_wires {max(d.widths())}")
    print(f"connectivity {kind}")
    print(f"faces {topo.face_count}")
    print(f"components {topo.component_count}")
    if kind != "disconnected":
        print(f"reduction_length {normalize_naive(d).steps}")
    if args.dump_tree:
        tree = build_structural_tree(d)
        print(dump_tree(tree))
        print(f"tree_code {tree.code().hex()}")
    if args.dump_map:
        m = gamma(d)
        sys.stdout.write(dump_map(m))
        if m.is_connected():
            print(f"map_code {canonical_map_code(m).hex()}")
    return 0


def cmd_oracle(args) -> int:
    d1, d2 = _load(args.first, args.signature), _load(args.second, args.signature)
    same, steps = bfs_equiv(d1, d2, node_cap=args.node_cap, witness=True)
    print("equivalent" if same else "not equivalent")
    if same and args.witness:
        sys.stdout.write(dg.serialize_trace(steps))
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--signature", help="generator signature file; lets arguments be terms")
    p = argparse.ArgumentParser(prog="sdnorm", description="Normal forms and equivalence of string diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    e = command("equiv", help="decide whether two diagrams are equivalent")
    e.add_argument("first")
    e.add_argument("second")
    e.add_argument("--method", choices=METHODS, default="auto")
    e.add_argument(
        "--witness",
        action="store_true",
        help="print exchanges turning the first into the second; for disconnected "
        "diagrams the search may give up, leaving only the verdict",
    )
    e.set_defaults(func=cmd_equiv)

    n = command("normalize", help="print the normal form")
    n.add_argument("diagram")
    n.add_argument("--side", choices=("right", "left"), default="right")
    eng = n.add_mutually_exclusive_group()
    eng.add_argument("--fast", action="store_true", help="peeling engine (default)")
    eng.add_argument("--naive", action="store_true", help="apply exchanges one at a time")
    n.add_argument("--strategy", choices=("topmost", "bottommost", "random"), default="topmost")
    n.add_argument("--seed", type=int, help="seed for --strategy random (default: $SDNORM_SEED)")
    n.add_argument("--trace", action="store_true", help="write the exchanges to stderr (implies --naive)")
    n.add_argument("--format", choices=("text", "json", "expr"), default="text")
    n.set_defaults(func=cmd_normalize)

    r = command("render", help="draw a diagram")
    r.add_argument("diagram")
    r.add_argument("--format", choices=("svg", "tikz", "ascii"), default="svg")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)

    c = command("convert", help="rewrite a diagram in another format")
    c.add_argument("diagram")
    c.add_argument("--to", choices=("text", "json", "expr"), default="text")
    c.add_argument("--emit-signature", metavar="FILE", help="with --to expr, write the matching signature")
    c.set_defaults(func=cmd_convert)

    s = command("spiral", help="print the spiral diagram with n vertices")
    s.add_argument("n", type=int)
    s.add_argument("--steps", action="store_true", help="print the length of its reduction")
    s.add_argument("--trace", action="store_true", help="print its reduction")
    s.add_argument("--format", choices=("text", "json", "expr"), default="text")
    s.set_defaults(func=cmd_spiral)

    st = command("stats", help="summarise a diagram")
    st.add_argument("diagram")
    st.add_argument("--dump-tree", action="store_true", help="print the structural tree and its code in hex")
    st.add_argument("--dump-map", action="store_true", help="print the combinatorial map and its code")
    st.set_defaults(func=cmd_stats)

    o = command("oracle", help="brute-force reference procedures")
    osub = o.add_subparsers(dest="oracle_command", required=True)
    oe = osub.add_parser("equiv", parents=[common], help="decide equivalence by exhaustive search")
    oe.add_argument("first")
    oe.add_argument("second")
    oe.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    oe.add_argument("--witness", action="store_true")
    oe.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SdnormError, UsageError, OSError, ValueError) as exc:
        print(f"sdnorm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
