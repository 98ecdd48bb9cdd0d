import pytest
from hypothesis import given
from hypothesis import strategies as st

from drawn import NESTED, NESTED_A, NESTED_B, drawn
from sdnorm.diagram import Diagram, admissible_exchanges, apply_left, apply_right, components, extract_graph
from sdnorm.normalize import boundary_closure, normalize_fast
from sdnorm.oracle import bfs_equiv
from sdnorm.terms import parse_expr, parse_signature, to_diagram
from sdnorm.topology import (
    ComponentNode,
    FaceNode,
    Topology,
    build_structural_tree,
    decide_equiv_tree,
    dump_tree,
    spot_adjacent,
    tree_code,
)
from sdnorm.unionfind import UnionFind
from strategies import diagrams


def D(s, *slices, labels=None):
    return Diagram.from_slices(s, slices, labels)


CUP_CAP = D(0, (0, 0, 2), (0, 2, 0))


# ------------------------------------------------------------------------ spots


def test_outer_spot_continues_past_the_cup():
    d = D(0, (0, 0, 1), (0, 1, 0))
    assert spot_adjacent(d, (0, 0), (1, 0))


def test_spot_inside_the_cup_is_new():
    assert not spot_adjacent(CUP_CAP, (0, 0), (1, 1))
    # with a single wire the spot right of it is outside again
    assert spot_adjacent(D(0, (0, 0, 1), (0, 1, 0)), (0, 0), (1, 1))


def test_spot_between_parallel_wires_persists():
    d = D(0, (0, 0, 2), (0, 1, 1), (1, 1, 1), (0, 2, 0))
    assert spot_adjacent(d, (1, 1), (2, 1))
    assert spot_adjacent(d, (2, 1), (3, 1))


def test_spot_levels_must_be_consecutive():
    with pytest.raises(ValueError):
        spot_adjacent(CUP_CAP, (0, 0), (2, 0))


def _closed(d):
    return d if d.is_closed() else boundary_closure(d)


@given(diagrams(max_vertices=7))
def test_faces_are_classes_of_adjacent_spots(d):
    d = _closed(d)
    topo = Topology(d)
    widths = d.widths()
    uf = UnionFind((h, k) for h in range(d.height + 1) for k in range(widths[h] + 1))
    for h in range(d.height):
        for k in range(widths[h] + 1):
            for k2 in range(widths[h + 1] + 1):
                if spot_adjacent(d, (h, k), (h + 1, k2)):
                    uf.union((h, k), (h + 1, k2))
    for h in range(d.height + 1):
        for k in range(widths[h] + 1):
            for h2 in range(d.height + 1):
                for k2 in range(widths[h2] + 1):
                    same = uf.find((h, k)) == uf.find((h2, k2))
                    assert same == (topo.spot_face[h][k] == topo.spot_face[h2][k2])


@given(diagrams(max_vertices=8))
def test_face_and_component_counts_follow_euler(d):
    d = _closed(d)
    topo = Topology(d)
    comps = components(d)
    wires = len(extract_graph(d))
    assert topo.component_count == len(comps)
    assert topo.face_count == wires - d.height + 1 + len(comps)
    for c, verts in enumerate(topo.component_vertices):
        assert sorted(verts) in [sorted(x) for x in comps]


def test_closed_loop_has_two_faces():
    topo = Topology(CUP_CAP)
    assert (topo.face_count, topo.component_count) == (2, 1)
    assert topo.component_parent == [0]
    assert topo.face_parent == [None, 0]
    assert topo.enclosed_faces(0) == [1]


def test_drawn_nesting():
    d = drawn(*NESTED)
    topo = Topology(d)
    assert topo.face_count == 4
    assert topo.component_count == 2
    by_vertices = {tuple(v): c for c, v in enumerate(topo.component_vertices)}
    a, b = by_vertices[NESTED_A], by_vertices[NESTED_B]
    assert topo.component_parent[a] == topo.component_parent[b] == 0
    assert len(topo.enclosed_faces(a)) == 1
    assert len(topo.enclosed_faces(b)) == 2
    tree = build_structural_tree(d)
    assert sorted(len(c.faces) for c in tree.components) == [1, 2]


def test_scalar_inside_a_loop():
    inside = D(0, (0, 0, 2), (1, 0, 0), (0, 2, 0))
    outside = D(0, (0, 0, 0), (0, 0, 2), (0, 2, 0))
    topo = Topology(inside)
    scalar = topo.vertex_component[1]
    loop = topo.vertex_component[0]
    assert topo.face_parent[topo.component_parent[scalar]] == loop
    assert not bfs_equiv(inside, outside)
    assert not decide_equiv_tree(inside, outside)


def test_topology_needs_a_closed_diagram():
    with pytest.raises(ValueError):
        Topology(D(1))


# ------------------------------------------------------------------------ trees


def test_single_scalar():
    tree = build_structural_tree(D(0, (0, 0, 0)))
    assert len(tree.components) == 1
    (leaf,) = tree.components
    assert leaf.faces == [] and leaf.normal_form == D(0, (0, 0, 0))


def test_empty_diagram_is_an_empty_face():
    assert tree_code(Diagram(0)) == FaceNode([]).code()


SCALARS = parse_signature("G a 0 0\nG b 0 0\n")


def test_scalars_commute():
    ab = to_diagram(parse_expr("a . b"), SCALARS)
    ba = to_diagram(parse_expr("b . a"), SCALARS)
    assert build_structural_tree(ab) == build_structural_tree(ba)
    assert tree_code(ab) == tree_code(ba)


def test_labels_matter():
    ab = to_diagram(parse_expr("a . b"), SCALARS)
    aa = to_diagram(parse_expr("a . a"), SCALARS)
    assert tree_code(ab) != tree_code(aa)
    assert not decide_equiv_tree(ab, aa)


def test_codes_are_injective_on_small_trees():
    leaf = ComponentNode(D(0, (0, 0, 0)))
    loop = ComponentNode(CUP_CAP, [FaceNode([])])
    trees = [
        FaceNode([]),
        FaceNode([leaf]),
        FaceNode([leaf, leaf]),
        FaceNode([loop]),
        FaceNode([ComponentNode(CUP_CAP, [FaceNode([leaf])])]),
        FaceNode([loop, leaf]),
    ]
    codes = [t.code() for t in trees]
    assert len(set(codes)) == len(codes)
    assert FaceNode([leaf, loop]).code() == FaceNode([loop, leaf]).code()


def test_component_node_stores_its_normal_form():
    d = D(0, (0, 0, 2), (1, 0, 1), (0, 2, 1), (0, 2, 0))
    tree = build_structural_tree(d)
    (comp,) = tree.components
    assert comp.normal_form == normalize_fast(d)


def test_dump_tree_is_indented():
    text = dump_tree(build_structural_tree(drawn(*NESTED)))
    lines = text.splitlines()
    assert lines[0] == "face (2 components)"
    assert sum(line.startswith("  component") for line in lines) == 2


@given(diagrams(max_vertices=7, labels=["a", "b"]), st.data())
def test_tree_code_is_invariant_under_exchanges(d, data):
    code = tree_code(d)
    for _ in range(4):
        moves = admissible_exchanges(d)
        if not moves:
            break
        side, n = data.draw(st.sampled_from(moves))
        d = apply_right(d, n) if side == "R" else apply_left(d, n)
        assert tree_code(d) == code


@given(diagrams(max_vertices=4, max_sources=2, labels=["a"]), diagrams(max_vertices=4, max_sources=2, labels=["a"]))
def test_tree_verdict_matches_search(d1, d2):
    assert decide_equiv_tree(d1, d2) == bfs_equiv(d1, d2)


@given(diagrams(max_vertices=5, max_sources=2), st.data())
def test_tree_verdict_on_scrambled_copies(d, data):
    e = d
    for _ in range(6):
        moves = admissible_exchanges(e)
        if not moves:
            break
        side, n = data.draw(st.sampled_from(moves))
        e = apply_right(e, n) if side == "R" else apply_left(e, n)
    assert decide_equiv_tree(d, e)
