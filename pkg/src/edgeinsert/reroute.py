"""Constructive rerouting for bounded-degree inputs.

With maximum degree 3 every shortest st-path in the extended dual is
already consistent; check_degree3 asserts this over an enumeration.  With
maximum degree up to 5 an inconsistent shortest path can always be
repaired into a consistent one of equal length by swapping single edges
around the offending vertex (reroute_degree5).  For arbitrary degree,
approx_delta splices fan detours around offending vertices and returns a
consistent path of length at most (max_degree - 2) times the shortest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .consistency import LR, induced_labeling, is_consistent, side_of_edge
from .embedding import EmbeddedGraph, max_degree
from .extended_dual import ATTACHMENT, DualPath, ExtendedDual
from .shortest_paths import bfs_shortest, enumerate_shortest

__all__ = ["Degree3Report", "check_degree3", "reroute_degree5", "approx_delta"]


class RerouteInvariantError(RuntimeError):
    """A structural guarantee of the rerouting procedure failed; indicates
    a bug in the caller's input or in this implementation, not bad data."""


@dataclass
class Degree3Report:
    paths_checked: int
    all_consistent: bool
    counterexample: DualPath | None = None


def check_degree3(g: EmbeddedGraph, ed: ExtendedDual, cap: int = 50) -> Degree3Report:
    if max_degree(g) > 3:
        raise ValueError("check_degree3 requires maximum degree at most 3")
    paths = enumerate_shortest(ed, cap=cap)
    for p in paths:
        if not is_consistent(ed, p):
            return Degree3Report(paths_checked=len(paths), all_consistent=False, counterexample=p)
    return Degree3Report(paths_checked=len(paths), all_consistent=True)


# ---------------------------------------------------------------------------
# Shared fan bookkeeping
# ---------------------------------------------------------------------------


def _crossing_side_of(ed: ExtendedDual, p: DualPath, i: int) -> tuple[int, int] | None:
    if ed.edges[p.edge_ids[i]].kind == ATTACHMENT:
        return None
    return side_of_edge(ed, p, i)


def _good_suffix_start(ed: ExtendedDual, p: DualPath) -> int:
    """First index from which every edge is good (no LR endpoint)."""
    labeling = induced_labeling(ed, p)
    start = 0
    for i in range(len(p.edge_ids)):
        sides = _crossing_side_of(ed, p, i)
        if sides is None:
            continue
        if labeling[sides[0]] == LR or labeling[sides[1]] == LR:
            start = i + 1
    return start


def _fan(ed: ExtendedDual, v: int, clockwise: bool) -> list[int]:
    """Neighbours of v in clockwise (or CCW) order."""
    rot = list(ed.graph.rotations[v])
    return rot[::-1] if clockwise else rot


def _edge_toward(ed: ExtendedDual, v: int, w: int, v_left: bool) -> tuple[int, int, int]:
    """Dual edge crossing primal {v,w} with the traversal that puts v on
    the requested side; returns (edge id, from_face, to_face)."""
    e = ed.dual_edge_of_primal(v, w)
    u0, v0 = e.primal  # a = left face of u0->v0; a->b puts v0 left
    if (v0 == v) == v_left:
        return e.id, e.a, e.b
    return e.id, e.b, e.a


def _replace_edge(p: DualPath, i: int, new_edge: int) -> DualPath:
    edges = list(p.edge_ids)
    edges[i] = new_edge
    return DualPath(vertices=p.vertices, edge_ids=tuple(edges))


# ---------------------------------------------------------------------------
# Degree <= 5: equal-length repair
# ---------------------------------------------------------------------------


def reroute_degree5(g: EmbeddedGraph, ed: ExtendedDual, max_iter: int | None = None) -> DualPath:
    """Consistent shortest st-path for graphs of maximum degree at most 5.

    Starting from a BFS shortest path, repeatedly repair the last non-good
    edge by swapping one path edge for the parallel dual edge on the far
    side of the offending degree-4/5 vertex.  Each step extends the good
    suffix, so the loop ends after at most |p| iterations.
    """
    if max_degree(g) > 5:
        raise ValueError("reroute_degree5 requires maximum degree at most 5")
    p = bfs_shortest(ed)
    target_len = len(p)
    if max_iter is None:
        max_iter = len(p.edge_ids) + 2

    for _ in range(max_iter):
        labeling = induced_labeling(ed, p)
        if LR not in labeling.values():
            p.validate(ed)
            assert len(p) == target_len
            return p
        p = _repair_step(ed, p, labeling)
        if len(p) != target_len:
            raise RerouteInvariantError("repair changed the path length")
    raise RerouteInvariantError("degree-5 rerouting did not terminate")


def _repair_step(ed: ExtendedDual, p: DualPath, labeling: dict[int, str]) -> DualPath:
    # e: last non-good edge; v: an LR endpoint of its crossed edge
    last = None
    for i in range(len(p.edge_ids)):
        sides = _crossing_side_of(ed, p, i)
        if sides and (labeling[sides[0]] == LR or labeling[sides[1]] == LR):
            last = i
    if last is None:
        raise RerouteInvariantError("no non-good edge on an inconsistent path")
    left, right = side_of_edge(ed, p, last)
    if labeling[left] == LR:
        v, mirrored = left, False  # v left of e: the proof's canonical case
    else:
        v, mirrored = right, True

    incident = [
        i
        for i in range(len(p.edge_ids))
        if (sides := _crossing_side_of(ed, p, i)) and v in sides
    ]
    if len(incident) != 2:
        raise RerouteInvariantError(
            f"expected exactly two crossings at the pinch vertex, got {len(incident)}"
        )
    e_prime = incident[0] if incident[1] == last else incident[1]
    if e_prime >= last:
        raise RerouteInvariantError("witness edge does not precede the last non-good edge")

    # name the fan clockwise from e' (mirrored: counterclockwise)
    ep_sides = side_of_edge(ed, p, e_prime)
    a = ep_sides[0] if ep_sides[1] == v else ep_sides[1]  # e' crosses {v,a}
    fan = _fan(ed, v, clockwise=not mirrored)
    fan = fan[fan.index(a) :] + fan[: fan.index(a)]  # c1 = a
    deg = len(fan)
    if deg < 4:
        raise RerouteInvariantError("pinch vertex of degree <= 3 on a shortest path")

    e_sides = side_of_edge(ed, p, last)
    b = e_sides[0] if e_sides[1] == v else e_sides[1]  # e crosses {v,b}
    j = fan.index(b) + 1  # positions are 1-based in the case analysis

    if deg == 4:
        if j != 3:
            raise RerouteInvariantError(f"degree-4 pinch with e at position {j}")
        # replace e' by the parallel edge crossing {v, c4}, keeping v on
        # the canonical left
        new_edge, frm, to = _edge_toward(ed, v, fan[3], v_left=not mirrored)
        idx = e_prime
    elif deg == 5:
        if j == 3:
            # replace e by the parallel edge crossing {v, c2}; v stays on
            # the right (mirrored: left) like on e'
            new_edge, frm, to = _edge_toward(ed, v, fan[1], v_left=mirrored)
            idx = last
        elif j == 4:
            new_edge, frm, to = _edge_toward(ed, v, fan[4], v_left=not mirrored)
            idx = e_prime
        else:
            raise RerouteInvariantError(f"degree-5 pinch with e at position {j}")
    else:
        raise RerouteInvariantError(f"unexpected pinch degree {deg}")

    if {frm, to} != {p.vertices[idx], p.vertices[idx + 1]}:
        raise RerouteInvariantError("replacement edge does not span the replaced step")
    new_p = _replace_edge(p, idx, new_edge)
    new_p.validate(ed)
    if _good_suffix_start(ed, new_p) >= _good_suffix_start(ed, p):
        raise RerouteInvariantError("good suffix did not grow")
    return new_p


# ---------------------------------------------------------------------------
# Arbitrary degree: (max_degree - 2)-approximation
# ---------------------------------------------------------------------------


def approx_delta(g: EmbeddedGraph, ed: ExtendedDual, max_iter: int | None = None) -> DualPath:
    """Consistent st-path of length at most max(1, max_degree - 2) times
    the shortest st-path length.

    While some prefix is inconsistent, splice a fan detour around the
    offending vertex: walk its faces clockwise from the last crossing back
    to the first face that already lies on the path's tail.  The repaired
    prefix stays consistent, so the inconsistency moves strictly toward t.
    """
    p = bfs_shortest(ed)
    delta = max_degree(g)
    if delta <= 2:
        return p
    shortest_len = len(p)
    if max_iter is None:
        max_iter = (delta + 2) * shortest_len + 10

    suffix_budget = None
    for _ in range(max_iter):
        state = _shortest_inconsistent_prefix(ed, p)
        if state is None:
            p.validate(ed)
            assert len(p) <= (delta - 2) * shortest_len
            return p
        prefix_end, v, mirrored = state
        measure = len(p.edge_ids) - prefix_end  # suffix the repair may keep
        if suffix_budget is not None and measure >= suffix_budget:
            raise RerouteInvariantError("approximation made no progress")
        suffix_budget = measure
        p = _splice_detour(ed, p, prefix_end, v, mirrored)
    raise RerouteInvariantError("approximation did not terminate")


def _shortest_inconsistent_prefix(
    ed: ExtendedDual, p: DualPath
) -> tuple[int, int, bool] | None:
    """(index of the prefix's last edge, LR vertex, mirrored?) or None."""
    lefts: set[int] = set()
    rights: set[int] = set()
    for i in range(len(p.edge_ids)):
        sides = _crossing_side_of(ed, p, i)
        if sides is None:
            continue
        left, right = sides
        if right in lefts or left in rights or left == right:
            # the vertex newly on both sides is an endpoint of this edge
            if left in rights:
                return i, left, False
            return i, right, True
        lefts.add(left)
        rights.add(right)
    return None


def _splice_detour(ed: ExtendedDual, p: DualPath, i2: int, v: int, mirrored: bool) -> DualPath:
    """Replace p[f_i, f_j] by the fan walk around v per the approximation
    rule; returns the simplified new path.

    Conventions (canonical case; mirrored flips the fan direction and all
    sides): ring[0..k-1] lists v's neighbours CCW starting at the crossing
    of the prefix's last edge; corner c_m is the face between ring[m-1]
    and ring[m], so crossing {v, ring[m]} with v on the left moves c_m to
    c_{m+1}.  The prefix's last edge runs c_0 -> c_1 with v left; the
    earlier crossing e runs c_i -> c_{i-1} with v right.
    """
    # e: last edge of p[s, f1] crossing an edge at v (v on the far side)
    e_idx = None
    for i in range(i2):
        sides = _crossing_side_of(ed, p, i)
        if sides and v in sides:
            e_idx = i
    if e_idx is None:
        raise RerouteInvariantError("no earlier crossing at the offending vertex")
    sides = side_of_edge(ed, p, e_idx)
    if (sides[0] if mirrored else sides[1]) != v:
        raise RerouteInvariantError("earlier crossing has the offender on the wrong side")
    far = sides[0] if sides[1] == v else sides[1]  # e crosses {v, far}

    last_sides = side_of_edge(ed, p, i2)
    anchor = last_sides[0] if last_sides[1] == v else last_sides[1]
    ring = _fan(ed, v, clockwise=mirrored)
    ring = ring[ring.index(anchor) :] + ring[: ring.index(anchor)]
    k = len(ring)

    def cross(m: int, v_canonical_left: bool) -> tuple[int, int, int]:
        """Crossing of {v, ring[m % k]}; canonical-left moves c_m -> c_{m+1}."""
        return _edge_toward(
            ed, v, ring[m % k], v_left=(v_canonical_left != mirrored)
        )

    def corner(m: int) -> int:
        # c_m: the face a canonical-left crossing of ring[m] starts from
        _, frm, _ = cross(m, True)
        return frm

    i_pos = ring.index(far)  # e crosses {v, ring[i_pos]}: paper's i = i_pos + 1
    paper_i = i_pos + 1
    if not 2 < paper_i <= k - 1:
        raise RerouteInvariantError(f"fan position {paper_i} outside the provable range")

    tail_pos = {p.vertices[j]: j for j in range(i2 + 1, len(p.vertices))}

    # f_j = c_{j-1}: first corner clockwise from f_i = c_{i_pos} on the tail
    j_corner = None
    for cand in range(i_pos - 1, 0, -1):  # c_{i-1} ... c_1 (c_1 = f_2 is on the tail)
        if corner(cand) in tail_pos:
            j_corner = cand
            break
    if j_corner is None:
        raise RerouteInvariantError("no rejoin face found on the tail")

    # q: c_{i_pos} -> ... -> c_{j_corner}, crossing {v, ring[m]} with v on
    # the canonical right at each step
    det_faces = []
    det_edges = []
    cur_face = corner(i_pos)
    for m in range(i_pos - 1, j_corner - 1, -1):
        eid, frm, to = cross(m, False)
        if frm != cur_face:
            raise RerouteInvariantError("fan walk left the expected face")
        det_faces.append(cur_face)
        det_edges.append(eid)
        cur_face = to
    if cur_face != corner(j_corner):
        raise RerouteInvariantError("fan walk missed the rejoin corner")

    # p' = p[s, f_i] + q + p[f_j, t]; e lands on f_i, so its path position
    # is e_idx + 1
    fi_at = e_idx + 1
    if p.vertices[fi_at] != corner(i_pos):
        raise RerouteInvariantError("detour start is not where e lands")
    rejoin_at = tail_pos[cur_face]
    vertices = list(p.vertices[:fi_at]) + det_faces + [cur_face] + list(
        p.vertices[rejoin_at + 1 :]
    )
    edges = list(p.edge_ids[:fi_at]) + det_edges + list(p.edge_ids[rejoin_at:])
    walk_v, walk_e = _simplify_walk(vertices, edges)
    new_p = DualPath(vertices=tuple(walk_v), edge_ids=tuple(walk_e))
    new_p.validate(ed)
    return new_p


def _simplify_walk(vertices: list[int], edges: list[int]) -> tuple[list[int], list[int]]:
    """Cut out loops so the walk becomes a simple path (crossings only
    shrink, which preserves consistency of any consistent stretch)."""
    out_v: list[int] = [vertices[0]]
    out_e: list[int] = []
    pos: dict[int, int] = {vertices[0]: 0}
    for idx in range(1, len(vertices)):
        v = vertices[idx]
        if v in pos:
            keep = pos[v]
            for w in out_v[keep + 1 :]:
                del pos[w]
            del out_v[keep + 1 :]
            del out_e[keep:]
        else:
            out_v.append(v)
            out_e.append(edges[idx - 1])
            pos[v] = len(out_v) - 1
    return out_v, out_e
