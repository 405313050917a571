from __future__ import annotations

import pytest

from edgeinsert.consistency import is_consistent
from edgeinsert.embedding import max_degree
from edgeinsert.extended_dual import build_extended_dual
from edgeinsert.reroute import approx_delta, check_degree3, reroute_degree5
from edgeinsert.shortest_paths import bfs_shortest
from edgeinsert.testkit import gen_fig2, gen_random_planar, oracle_shortest_consistent

from conftest import c4, wheel_i2


def test_check_degree3_on_cycle(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    report = check_degree3(g, ed)
    assert report.all_consistent and report.paths_checked == 2


def test_check_degree3_rejects_high_degree():
    g, s, t = wheel_i2()
    ed = build_extended_dual(g, s, t)
    with pytest.raises(ValueError):
        check_degree3(g, ed)


def test_check_degree3_random_instances():
    for seed in range(25):
        g, s, t = gen_random_planar(20, 3, seed)
        ed = build_extended_dual(g, s, t)
        assert check_degree3(g, ed, cap=30).all_consistent


def test_reroute_degree5_identity_on_consistent(wheel_instance):
    g, s, t = wheel_instance
    ed = build_extended_dual(g, s, t)
    p = reroute_degree5(g, ed)
    assert p == bfs_shortest(ed)  # already consistent, returned unchanged


def test_reroute_degree5_random_instances():
    for seed in range(60):
        g, s, t = gen_random_planar(14, 5, seed)
        ed = build_extended_dual(g, s, t)
        p = reroute_degree5(g, ed)
        assert is_consistent(ed, p)
        assert len(p) == len(bfs_shortest(ed))


def test_reroute_degree5_rejects_degree6():
    g, s, t = gen_fig2(1)
    ed = build_extended_dual(g, s, t)
    with pytest.raises(ValueError):
        reroute_degree5(g, ed)


def test_approx_identity_when_consistent(c4_instance):
    g, s, t = c4_instance
    ed = build_extended_dual(g, s, t)
    assert approx_delta(g, ed) == bfs_shortest(ed)


def test_approx_on_fig2_within_bound():
    for m in (1, 2):
        g, s, t = gen_fig2(m)
        ed = build_extended_dual(g, s, t)
        p = approx_delta(g, ed)
        assert is_consistent(ed, p)
        dist = len(bfs_shortest(ed))
        assert len(p) <= (max_degree(g) - 2) * dist
        res = oracle_shortest_consistent(ed)
        assert len(p) >= res.optimum_length


def test_approx_random_instances_bound_and_floor():
    checked = 0
    for seed in range(40):
        g, s, t = gen_random_planar(12, 8, seed)
        ed = build_extended_dual(g, s, t)
        p = approx_delta(g, ed)
        assert is_consistent(ed, p)
        dist = len(bfs_shortest(ed))
        delta = max_degree(g)
        assert len(p) <= max(1, delta - 2) * dist
        res = oracle_shortest_consistent(ed)
        if res.conclusive:
            assert len(p) >= res.optimum_length
            checked += 1
    assert checked > 20
