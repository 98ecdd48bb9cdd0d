"""One entry point for deciding equivalence, choosing an algorithm per input."""
from __future__ import annotations

from typing import Optional

from .diagram import Diagram, connectivity
from .errors import NodeCapExceeded, NotBoundaryConnected
from .maps import decide_equiv_connected
from .normalize import normalize_naive
from .oracle import bfs_equiv
from .topology import decide_equiv_tree

METHODS = ("auto", "tree", "map", "naive")


def _same_shape(d1: Diagram, d2: Diagram) -> bool:
    return (d1.source_count, d1.target_count) == (d2.source_count, d2.target_count) and sorted(
        (v.i, v.o, v.label or "") for v in d1
    ) == sorted((v.i, v.o, v.label or "") for v in d2)


def map_applicable(d: Diagram) -> bool:
    return connectivity(d) != "disconnected"


def decide_equiv(d1: Diagram, d2: Diagram, method: str = "auto") -> bool:
    """Whether ``d1`` and ``d2`` are related by a sequence of exchanges.

    ``auto`` compares maps when neither input is disconnected and
    structural trees otherwise.  ``naive`` compares right normal forms and
    needs boundary-connected inputs.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if not _same_shape(d1, d2):
        return False
    if method == "auto":
        method = "map" if map_applicable(d1) and map_applicable(d2) else "tree"
    if method == "tree":
        return decide_equiv_tree(d1, d2)
    if method == "map":
        return decide_equiv_connected(d1, d2)
    for d in (d1, d2):
        if connectivity(d) == "disconnected":
            raise NotBoundaryConnected()
    return normalize_naive(d1).result == normalize_naive(d2).result


def witness(d1: Diagram, d2: Diagram, node_cap: int = 200_000) -> Optional[list]:
    """Exchanges turning ``d1`` into ``d2``, or ``None`` if they are not equivalent.

    For boundary-connected inputs the path goes through the common right
    normal form: reduce ``d1``, then undo the reduction of ``d2`` with left
    exchanges.  Otherwise a bounded breadth-first search is used.
    """
    if not _same_shape(d1, d2):
        return None
    if connectivity(d1) != "disconnected" and connectivity(d2) != "disconnected":
        r1, r2 = normalize_naive(d1), normalize_naive(d2)
        if r1.result != r2.result:
            return None
        back = [("L", n) for _, n in reversed(r2.trace)]
        return r1.trace + back
    if not decide_equiv_tree(d1, d2):
        return None
    ok, steps = bfs_equiv(d1, d2, node_cap=node_cap, witness=True)
    if not ok:
        raise NodeCapExceeded(node_cap)
    return steps


__all__ = ["decide_equiv", "witness", "map_applicable", "METHODS"]
