from __future__ import annotations

import json

import pytest

from edgeinsert.extended_dual import ATTACHMENT, CROSSING, DualPath, build_extended_dual, crossings_of_path
from edgeinsert.shortest_paths import bfs_shortest

from conftest import c4, two_triangles, wheel_i2


def test_c4_terminals_attach_once_per_face(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    s_edges = [e for e in ed.incident(ed.terminal_s) if e.kind == ATTACHMENT]
    t_edges = [e for e in ed.incident(ed.terminal_t) if e.kind == ATTACHMENT]
    assert len(s_edges) == g.degree(s) == 2
    assert len(t_edges) == 2
    assert {e.a for e in s_edges} == {0, 1}
    assert {e.a for e in t_edges} == {0, 1}


def test_two_triangles_three_corners_each():
    g, s, t = two_triangles()
    ed = build_extended_dual(g, s, t)
    # s has degree 2: two corners; t likewise (the spec's three-corner case
    # needs degree 3, covered by the wheel below)
    assert len(ed.incident(ed.terminal_s)) == g.degree(s)
    assert len(ed.incident(ed.terminal_t)) == g.degree(t)


def test_wheel_terminal_corner_counts(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    assert len(ed.incident(ed.terminal_s)) == 3  # s inside, one per spoke gap
    assert len(ed.incident(ed.terminal_t)) == 1  # degree-1 terminal


def test_degree_one_terminal_attaches_once(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    (attach,) = ed.incident(ed.terminal_t)
    assert attach.kind == ATTACHMENT
    assert attach.corner == (4, 0)


def test_rejects_adjacent_or_equal_terminals():
    g, _, _ = c4()
    with pytest.raises(ValueError, match="already present"):
        build_extended_dual(g, 0, 1)
    with pytest.raises(ValueError, match="distinct"):
        build_extended_dual(g, 0, 0)


def test_attachment_edges_carry_no_primal():
    g, s, t = wheel_i2()
    ed = build_extended_dual(g, s, t)
    for e in ed.edges:
        if e.kind == ATTACHMENT:
            assert e.primal is None and e.corner is not None
        else:
            assert e.primal is not None and e.corner is None


def test_crossing_count_is_length_minus_two():
    g, s, t = c4()
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    count, crossed = crossings_of_path(ed, p)
    assert count == len(p) - 2 == 0
    assert crossed == []


def test_path_validation_rejects_malformed(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    with pytest.raises(ValueError):
        DualPath(vertices=p.vertices[:-1], edge_ids=p.edge_ids).validate(ed)
    with pytest.raises(ValueError, match="terminal"):
        DualPath(vertices=tuple(reversed(p.vertices)), edge_ids=tuple(reversed(p.edge_ids))).validate(ed)


def test_removing_terminals_recovers_dual(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    crossing = [e for e in ed.edges if e.kind == CROSSING]
    assert len(crossing) == g.edge_count
    assert {e.id for e in ed.edges} == set(range(len(ed.edges)))


def test_path_json_export(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = bfs_shortest(ed)
    data = json.loads(p.to_json(ed))
    assert data["faces"] == list(p.vertices[1:-1])
    assert len(data["crossed_edges"]) == len(p) - 2


def test_dot_export_mentions_terminals(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    dot = ed.to_dot()
    assert "s(0)" in dot and "t(2)" in dot and "style=dashed" in dot
