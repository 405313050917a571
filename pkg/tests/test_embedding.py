from __future__ import annotations

import pytest

from edgeinsert.embedding import (
    EmbeddedGraph,
    EmbeddingError,
    InputFormatError,
    build_dual,
    extract_faces,
    format_instance,
    max_degree,
    parse_instance,
    validate_embedding,
)

from conftest import c4, k4, p3, two_triangles, wheel_i2


def test_c4_validates_with_two_faces():
    g, _, _ = c4()
    report = validate_embedding(g)
    assert report.ok
    faces = extract_faces(g)
    assert len(faces) == 2
    assert all(len(f) == 4 for f in faces)


def test_k4_validates_with_four_triangles():
    g = k4()
    assert validate_embedding(g).ok
    faces = extract_faces(g)
    assert len(faces) == 4
    assert all(len(f) == 3 for f in faces)


def test_k4_with_reversed_rotation_fails_euler():
    g = k4()
    rotations = list(g.rotations)
    rotations[3] = tuple(reversed(rotations[3]))
    bad = EmbeddedGraph(rotations=tuple(rotations))
    report = validate_embedding(bad)
    assert not report.checks["euler"]
    # hand trace: flipping one rotation of K4 merges faces down to 2
    assert len(extract_faces(bad)) != 4


def test_p3_single_face_walks_each_bridge_twice():
    g = p3()
    assert validate_embedding(g).ok
    faces = extract_faces(g)
    assert len(faces) == 1
    assert len(faces[0]) == 4


def test_face_boundaries_partition_darts():
    for g in (c4()[0], k4(), p3(), two_triangles()[0], wheel_i2()[0]):
        faces = extract_faces(g)
        darts = [d for f in faces for d in f.boundary]
        assert len(darts) == 2 * g.edge_count
        assert len(set(darts)) == len(darts)


def test_c4_dual_two_vertices_four_parallel_edges():
    g, _, _ = c4()
    dual = build_dual(g)
    assert dual.face_count == 2
    assert dual.edge_count == 4
    assert all(l != r for l, r in zip(dual.left_face, dual.right_face))


def test_k4_dual_is_k4():
    dual = build_dual(k4())
    assert dual.face_count == 4
    pairs = {frozenset((l, r)) for l, r in zip(dual.left_face, dual.right_face)}
    assert len(pairs) == 6  # every pair of faces shares exactly one edge


def test_p3_dual_is_two_loops():
    dual = build_dual(p3())
    assert dual.face_count == 1
    assert dual.edge_count == 2
    assert all(l == r == 0 for l, r in zip(dual.left_face, dual.right_face))


def test_max_degree():
    assert max_degree(c4()[0]) == 2
    assert max_degree(k4()) == 3
    star = EmbeddedGraph(rotations=((1, 2, 3, 4, 5, 6), (0,), (0,), (0,), (0,), (0,), (0,)))
    assert max_degree(star) == 6


def test_disconnected_rejected():
    g = EmbeddedGraph(rotations=((1,), (0,), (3,), (2,)))
    report = validate_embedding(g)
    assert not report.checks["connected"]
    assert not report.ok


def test_dangling_dart_raises():
    g = EmbeddedGraph(rotations=((1,), ()))
    with pytest.raises(EmbeddingError, match="dangling dart"):
        validate_embedding(g)


def test_instance_round_trip():
    g, s, t = two_triangles()
    text = format_instance(g, s, t)
    g2, s2, t2 = parse_instance(text)
    assert g2 == g and (s2, t2) == (s, t)


def test_instance_parse_errors_carry_line_numbers():
    with pytest.raises(InputFormatError, match="line 1"):
        parse_instance("not a header\n")
    with pytest.raises(InputFormatError, match="line 3"):
        parse_instance("2 1\n0: 1\n1 oops\n0 1\n")
    bad_edge_count = "2 5\n0: 1\n1: 0\n0 1\n"
    with pytest.raises(InputFormatError, match="header says 5"):
        parse_instance(bad_edge_count)


def test_instance_comments_and_blanks_ignored():
    text = "# demo\n\n4 4\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2  # rotation\n\n0 2\n"
    g, s, t = parse_instance(text)
    assert g == c4()[0] and (s, t) == (0, 2)
