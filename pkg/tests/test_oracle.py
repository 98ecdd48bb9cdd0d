import random

import pytest
from hypothesis import given

from drawn import ROTATED_LEAF, drawn
from sdnorm.diagram import Diagram, apply_right, connectivity, replay, serialize, validate
from sdnorm.errors import NodeCapExceeded
from sdnorm.maps import from_cycles
from sdnorm.oracle import (
    bfs_equiv,
    brute_force_isomorphic,
    enumerate_diagrams,
    equivalence_class,
    random_boundary_connected_diagram,
    random_connected_diagram,
    random_diagram,
)
from sdnorm.unionfind import UnionFind
from strategies import diagrams


def D(s, *slices, labels=None):
    return Diagram.from_slices(s, slices, labels)


def test_enumerate_nothing():
    assert list(enumerate_diagrams(0, 2, 0)) == [Diagram(0)]


def test_enumerate_single_vertex_count():
    # S=0: empty, (0,0,0), (0,0,1).  S=1: empty, (0,0,0), (1,0,0), (0,1,0), (0,1,1).
    assert len(list(enumerate_diagrams(1, 1, 1))) == 8


def test_enumeration_is_valid_bounded_and_duplicate_free():
    seen = set()
    for d in enumerate_diagrams(4, 2, 2):
        validate(d)
        assert max(d.widths()) <= 2
        assert all(v.i <= 2 and v.o <= 2 for v in d)
        key = serialize(d)
        assert key not in seen
        seen.add(key)
    assert len(seen) > 1000


def test_closed_enumeration():
    ds = list(enumerate_diagrams(4, 2, 2, closed=True))
    assert ds and all(d.is_closed() for d in ds)
    assert D(0, (0, 0, 2), (0, 2, 0)) in ds


def test_witness_for_one_exchange():
    d = D(2, (0, 1, 1), (1, 1, 1))
    e = apply_right(d, 0)
    same, steps = bfs_equiv(d, e, witness=True)
    assert same and steps == [("R", 0)]


def test_scalars_commute():
    ab = D(0, (0, 0, 0), (0, 0, 0), labels=["b", "a"])
    ba = D(0, (0, 0, 0), (0, 0, 0), labels=["a", "b"])
    assert bfs_equiv(ab, ba)
    assert len(equivalence_class(ab)) == 2


def test_rotated_leaf_is_not_reachable():
    a, b = (drawn(*x) for x in ROTATED_LEAF)
    assert b not in equivalence_class(a)
    assert not bfs_equiv(a, b)


def test_node_cap():
    d = random_boundary_connected_diagram(random.Random(1), 12, 3)
    with pytest.raises(NodeCapExceeded):
        equivalence_class(d, node_cap=5)


@given(diagrams(max_vertices=5, labels=["a", "b"]))
def test_class_members_are_reached_by_witnesses(d):
    cls = equivalence_class(d)
    assert cls[0] == d
    target = cls[-1]
    same, steps = bfs_equiv(d, target, witness=True)
    assert same and replay(d, steps) == target


def test_random_generators():
    rng = random.Random(2)
    for n in (1, 2, 7, 40):
        d = random_connected_diagram(rng, n, 3, 2)
        assert d.height == n and connectivity(d) == "connected"
        b = random_boundary_connected_diagram(rng, n, 3)
        assert b.height == n and connectivity(b) != "disconnected"
        validate(random_diagram(rng, n, max_wires=4))
    assert max(random_diagram(rng, 30, max_wires=3).widths()) <= 3


def test_brute_force_isomorphism():
    m = from_cycles(4, [(0, 1), (2, 3)], [(1, 2)])
    same = from_cycles(4, [(0, 1), (2, 3)], [(3, 0)])
    other = from_cycles(4, [(0, 1), (2, 3)], [(0, 1, 2, 3)])
    assert brute_force_isomorphic(m, same)
    assert not brute_force_isomorphic(m, other)


def test_union_find():
    uf = UnionFind(range(5))
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3)
    assert uf.find(2) != uf.find(0)
    uf.add("x")
    assert "x" in uf and 7 not in uf
