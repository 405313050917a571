from __future__ import annotations

import json

import pytest

from edgeinsert.consistency import (
    L,
    LR,
    R,
    induced_labeling,
    is_compatible,
    is_consistent,
    labeling_to_json,
    non_crossing,
    side_of_edge,
)
from edgeinsert.extended_dual import DualPath, build_extended_dual
from edgeinsert.shortest_paths import bfs_shortest, enumerate_shortest

from conftest import c4, two_triangles, wheel_i2


def _path_through(ed, mid_faces, edge_picks):
    """Assemble a DualPath from explicit vertices and edge ids."""
    vertices = (ed.terminal_s, *mid_faces, ed.terminal_t)
    p = DualPath(vertices=vertices, edge_ids=tuple(edge_picks))
    p.validate(ed)
    return p


def _edge_between(ed, a, b, kind=None):
    for e in ed.edges:
        if {e.a, e.b} == {a, b} and (kind is None or e.kind == kind):
            return e.id
    raise AssertionError(f"no edge between {a} and {b}")


def _crossing_edge(ed, u, v):
    return ed.dual_edge_of_primal(u, v).id


def test_c4_side_swaps_with_direction(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    e01 = ed.dual_edge_of_primal(0, 1)
    inner, outer = e01.a, e01.b
    fwd = _path_through(
        ed,
        (inner, outer),
        (
            _edge_between(ed, ed.terminal_s, inner, "attachment"),
            e01.id,
            _edge_between(ed, outer, ed.terminal_t, "attachment"),
        ),
    )
    bwd = _path_through(
        ed,
        (outer, inner),
        (
            _edge_between(ed, ed.terminal_s, outer, "attachment"),
            e01.id,
            _edge_between(ed, inner, ed.terminal_t, "attachment"),
        ),
    )
    assert side_of_edge(ed, fwd, 1) == (1, 0)  # head of the dart lies left
    assert side_of_edge(ed, bwd, 1) == (0, 1)


def test_side_of_attachment_edge_rejected(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    with pytest.raises(ValueError, match="attachment"):
        side_of_edge(ed, p, 0)


def test_zero_crossing_path_all_unlabeled(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    labeling = induced_labeling(ed, p)
    assert all(lab is None for lab in labeling.values())
    assert is_consistent(ed, p)


def test_wheel_single_crossing_labels_one_pair(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    assert len(p) == 3
    labeling = induced_labeling(ed, p)
    labelled = {v: lab for v, lab in labeling.items() if lab is not None}
    assert len(labelled) == 2
    assert sorted(labelled.values()) == [L, R]
    assert is_consistent(ed, p)


def test_reversing_swaps_labels(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    # cross edge (1,2) twice is impossible on a simple path; compare the
    # two traversal directions of the same crossing instead
    e12 = ed.dual_edge_of_primal(1, 2)
    inner, outer = e12.a, e12.b
    p = _path_through(
        ed,
        (inner, outer),
        (
            _edge_between(ed, ed.terminal_s, inner, "attachment"),
            e12.id,
            _edge_between(ed, outer, ed.terminal_t, "attachment"),
        ),
    )
    lab = induced_labeling(ed, p)
    assert {lab[1], lab[2]} == {L, R}
    assert lab[0] is None and lab[3] is None


def test_is_compatible_matches_induced(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    labeling = induced_labeling(ed, p)
    total = {v: (labeling[v] if labeling[v] in (L, R) else L) for v in labeling}
    assert is_compatible(ed, total, p)
    flipped = dict(total)
    left, _ = side_of_edge(ed, p, 1)
    flipped[left] = R
    assert not is_compatible(ed, flipped, p)


def test_compatible_with_zero_crossings_any_labeling(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    assert is_compatible(ed, {v: R for v in range(4)}, p)


def test_non_crossing_disjoint_paths(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    paths = enumerate_shortest(ed, cap=10)
    assert len(paths) == 2
    assert non_crossing(ed, paths[0], paths[1])


def test_non_crossing_path_with_itself(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    assert non_crossing(ed, p, p)


def test_crossing_paths_detected():
    # two triangles instance: route both paths through the outer face so
    # their ends interleave around it
    g, s, t = two_triangles()
    ed = build_extended_dual(g, s, t)
    # faces: find outer (the one with 4 distinct vertices on its boundary)
    outer = next(f.id for f in ed.faces if len(set(f.vertices)) == 4)
    left = next(f.id for f in ed.faces if set(f.vertices) == {0, 1, 2})
    right = next(f.id for f in ed.faces if set(f.vertices) == {1, 2, 3})

    # interleaved pair: p4 slides down one flank of the outer face while
    # q4 cuts across it, so their ends alternate around the outer vertex
    p4 = _path_through(
        ed,
        (left, outer, right),
        (
            _edge_between(ed, ed.terminal_s, left, "attachment"),
            _crossing_edge(ed, 0, 1),
            _crossing_edge(ed, 2, 3),
            _edge_between(ed, right, ed.terminal_t, "attachment"),
        ),
    )
    q4 = _path_through(
        ed,
        (left, outer, right),
        (
            _edge_between(ed, ed.terminal_s, left, "attachment"),
            _crossing_edge(ed, 0, 2),
            _crossing_edge(ed, 1, 3),
            _edge_between(ed, right, ed.terminal_t, "attachment"),
        ),
    )
    assert not non_crossing(ed, p4, q4)

    # crossing pair: both run through outer and right with interleaved ends
    q2 = _path_through(
        ed,
        (left, outer, right),
        (
            _edge_between(ed, ed.terminal_s, left, "attachment"),
            _crossing_edge(ed, 0, 1),
            _crossing_edge(ed, 1, 3),
            _edge_between(ed, right, ed.terminal_t, "attachment"),
        ),
    )
    p2 = _path_through(
        ed,
        (left, outer, right),
        (
            _edge_between(ed, ed.terminal_s, left, "attachment"),
            _crossing_edge(ed, 0, 2),
            _crossing_edge(ed, 2, 3),
            _edge_between(ed, right, ed.terminal_t, "attachment"),
        ),
    )
    # p2 hugs vertex 2's side, q2 hugs vertex 1's side; they share the
    # first/last attachments but no crossing edge, and do not cross
    assert non_crossing(ed, p2, q2)


def test_labeling_json(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    data = json.loads(labeling_to_json(induced_labeling(ed, p)))
    assert set(data) == {str(v) for v in range(5)}
