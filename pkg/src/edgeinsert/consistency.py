"""Labelings induced by dual paths and the consistency test.

Inserting the new segment along a dual path forces every primal vertex
incident to a crossed edge onto one side of the segment.  A vertex forced
onto both sides (label LR) certifies that no straight-line drawing with
the given embedding realizes the path; a path without LR vertices is
consistent and therefore realizable.
"""

from __future__ import annotations

import json

from .extended_dual import ATTACHMENT, DualPath, ExtendedDual

__all__ = [
    "L",
    "R",
    "LR",
    "side_of_edge",
    "induced_labeling",
    "is_consistent",
    "first_lr_vertex",
    "is_compatible",
    "non_crossing",
    "labeling_to_json",
]

L = "L"
R = "R"
LR = "LR"
# unlabeled vertices map to None


def side_of_edge(ed: ExtendedDual, p: DualPath, i: int) -> tuple[int, int]:
    """Endpoints of the i-th crossed primal edge as (left, right).

    Orientation: the stored primal dart (u, v) has the edge's `a` end on
    its left face, so walking the dual edge a -> b puts v left of the
    traversal; reversing the step swaps the sides.
    """
    edge = ed.edges[p.edge_ids[i]]
    if edge.primal is None:
        raise ValueError(f"edge at step {i} is an attachment edge")
    u, v = edge.primal
    forward = p.vertices[i] == edge.a
    if not forward and p.vertices[i] != edge.b:
        raise ValueError(f"step {i} does not start at an endpoint of its edge")
    return (v, u) if forward else (u, v)


def induced_labeling(ed: ExtendedDual, p: DualPath) -> dict[int, str]:
    """Map every primal vertex to L, R, LR or None as forced by p."""
    lefts: set[int] = set()
    rights: set[int] = set()
    for i in range(len(p.edge_ids)):
        if ed.edges[p.edge_ids[i]].kind == ATTACHMENT:
            continue
        left, right = side_of_edge(ed, p, i)
        lefts.add(left)
        rights.add(right)
    labeling: dict[int, str] = {}
    for v in range(ed.graph.vertex_count):
        on_l, on_r = v in lefts, v in rights
        if on_l and on_r:
            labeling[v] = LR
        elif on_l:
            labeling[v] = L
        elif on_r:
            labeling[v] = R
        else:
            labeling[v] = None  # type: ignore[assignment]
    return labeling


def is_consistent(ed: ExtendedDual, p: DualPath) -> bool:
    return LR not in induced_labeling(ed, p).values()


def first_lr_vertex(ed: ExtendedDual, p: DualPath) -> int | None:
    for v, lab in induced_labeling(ed, p).items():
        if lab == LR:
            return v
    return None


def is_compatible(ed: ExtendedDual, labeling: dict[int, str], p: DualPath) -> bool:
    """True iff every crossed edge has its left endpoint labeled L and its
    right endpoint labeled R."""
    for i in range(len(p.edge_ids)):
        if ed.edges[p.edge_ids[i]].kind == ATTACHMENT:
            continue
        left, right = side_of_edge(ed, p, i)
        if labeling.get(left) != L or labeling.get(right) != R:
            return False
    return True


def labeling_to_json(labeling: dict[int, str]) -> str:
    return json.dumps({str(v): lab for v, lab in labeling.items()})


def _path_ends_at(ed: ExtendedDual, p: DualPath, x: int) -> list[tuple[int, int]]:
    ends = []
    for i, e in enumerate(p.edge_ids):
        if p.vertices[i] == x:
            ends.append((e, 0 if ed.edges[e].a == x else 1))
        if p.vertices[i + 1] == x:
            ends.append((e, 0 if ed.edges[e].a == x else 1))
    return ends


def non_crossing(ed: ExtendedDual, p: DualPath, q: DualPath) -> bool:
    """True iff at every shared vertex the edge ends of p and q do not
    alternate in the cyclic order of the extended dual's embedding.

    Ends of edges used by both paths are ignored: a shared edge can be
    attributed to either path, so it never forces an alternation.
    """
    shared_edges = set(p.edge_ids) & set(q.edge_ids)
    for x in set(p.vertices) & set(q.vertices):
        p_ends = {h for h in _path_ends_at(ed, p, x) if h[0] not in shared_edges}
        q_ends = {h for h in _path_ends_at(ed, q, x) if h[0] not in shared_edges}
        if len(p_ends) < 2 or len(q_ends) < 2:
            continue
        ring = ed.rsys.rot[x]
        pos = {h: i for i, h in enumerate(ring)}
        (a1, a2) = sorted(pos[h] for h in p_ends)
        between = {i for i in (pos[h] for h in q_ends) if a1 < i < a2}
        if len(between) == 1:  # one q end strictly inside, one outside
            return False
    return True
