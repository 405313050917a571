"""Polynomial decision of "is some shortest st-path consistent?" when the
terminals share a face of the shortest-path DAG.

The reduction follows three steps.  First, a consistent shortest st-path
exists iff there are a directed path p (inside the shortest-path DAG) and
an undirected path p' that share no crossing edge and do not cross; p'
may reuse terminal attachment edges, mirroring the fact that only crossed
primal edges matter.  Second, both path families are normalized: p
chooses, per face column of each two-edge-connected block, whether to run
along the lower or upper boundary thread, with chord/blob separators
restricting neighbouring choices; p' chooses, per segment between
boundary-spanning exterior blobs (walls), which thread side to walk,
hopping through a wall blob at each boundary.  Third, the choices become
one boolean per column/segment, separator restrictions and edge-sharing
conflicts become binary clauses, and the instance is solved with the
implication-graph/SCC method.  A yes answer is always re-validated by
reconstructing both paths and checking length, crossing-disjointness, the
non-crossing predicate and the induced labeling.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field

from .consistency import is_consistent, non_crossing
from .extended_dual import ATTACHMENT, CROSSING, DualPath, ExtendedDual
from .rotsys import HalfEdge
from .shortest_paths import ShortestPathDag, build_gsp

__all__ = [
    "NormalizationError",
    "CommonFace",
    "Separator",
    "Column",
    "Wall",
    "Segment",
    "StFriendlyModel",
    "PartnerPair",
    "Decision",
    "check_common_face",
    "build_st_friendly",
    "normalize",
    "extract_partners",
    "decide",
    "solve_two_sat",
]

LAM, MU = 0, 1  # thread ids: the two boundary st-paths of the common face


class NormalizationError(RuntimeError):
    """A structural postcondition of the reduction failed."""


# ---------------------------------------------------------------------------
# Common face of the shortest-path DAG
# ---------------------------------------------------------------------------


@dataclass
class CommonFace:
    # per thread: vertex occurrences S..T and the edge ids between them
    thread_vertices: tuple[list[int], list[int]]
    thread_edges: tuple[list[int], list[int]]
    edge_slots: dict[int, list[tuple[int, int]]]  # edge -> occurrences
    occurrences: dict[int, list[tuple[int, int]]]  # vertex -> occurrences
    # exterior half-edge end -> (thread, index) of its corner; ends in the
    # terminal corners map to (-1, 0) at s and (-1, 1) at t
    corner_of_end: dict[HalfEdge, tuple[int, int]]

    def occ_vertex(self, th: int, i: int) -> int:
        if th < 0:
            lam = self.thread_vertices[LAM]
            return lam[0] if i == 0 else lam[-1]
        return self.thread_vertices[th][i]


def _gsp_half_edges(gsp: ShortestPathDag) -> set[HalfEdge]:
    return {(e, s) for e in gsp.direction for s in (0, 1)}


def _gsp_next(ed: ExtendedDual, in_gsp: set[HalfEdge], h: HalfEdge) -> tuple[HalfEdge, list[HalfEdge]]:
    """Next DAG half-edge along the face left of h, plus the exterior ends
    skipped in the corner between them."""
    rsys = ed.rsys
    cur = rsys.twin(h)
    skipped: list[HalfEdge] = []
    while True:
        cur = rsys.rot_prev(cur)
        if cur in in_gsp:
            return cur, skipped
        skipped.append(cur)


def check_common_face(ed: ExtendedDual, gsp: ShortestPathDag) -> CommonFace | None:
    """Trace the faces of the DAG subgraph; return the boundary threads of
    the first face that carries both terminals, or None."""
    in_gsp = _gsp_half_edges(gsp)
    rsys = ed.rsys
    seen: set[HalfEdge] = set()
    s, t = ed.terminal_s, ed.terminal_t
    for start in sorted(in_gsp):
        if start in seen:
            continue
        orbit = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur, _ = _gsp_next(ed, in_gsp, cur)
        origins = [rsys.origin(h) for h in orbit]
        if s in origins and t in origins:
            return _build_common_face(ed, in_gsp, orbit)
    return None


def _build_common_face(
    ed: ExtendedDual, in_gsp: set[HalfEdge], orbit: list[HalfEdge]
) -> CommonFace:
    rsys = ed.rsys
    s, t = ed.terminal_s, ed.terminal_t
    origins = [rsys.origin(h) for h in orbit]
    if origins.count(s) != 1 or origins.count(t) != 1:
        raise NormalizationError("terminal appears more than once on the common face")
    si = origins.index(s)
    orbit = orbit[si:] + orbit[:si]
    origins = origins[si:] + origins[:si]
    ti = origins.index(t)

    lam_halves = orbit[:ti]  # S -> T along the walk
    mu_halves = orbit[ti:]  # T -> S along the walk; reversed below
    lam_vertices = [s] + [rsys.head(h) for h in lam_halves]
    lam_edges = [h[0] for h in lam_halves]
    mu_vertices_walk = [t] + [rsys.head(h) for h in mu_halves]
    assert mu_vertices_walk[-1] == s
    mu_vertices = list(reversed(mu_vertices_walk))
    mu_edges = list(reversed([h[0] for h in mu_halves]))

    edge_slots: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, e in enumerate(lam_edges):
        edge_slots[e].append((LAM, i))
    for i, e in enumerate(mu_edges):
        edge_slots[e].append((MU, i))

    occurrences: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, v in enumerate(lam_vertices):
        occurrences[v].append((LAM, i))
    for i, v in enumerate(mu_vertices):
        occurrences[v].append((MU, i))

    corner_of_end: dict[HalfEdge, tuple[int, int]] = {}
    k = len(orbit)
    for idx, h in enumerate(orbit):
        _, skipped = _gsp_next(ed, in_gsp, h)
        u = rsys.head(h)
        walk_pos = (idx + 1) % k
        if u == s:
            loc = (-1, 0)
        elif u == t:
            loc = (-1, 1)
        elif walk_pos <= ti:
            loc = (LAM, walk_pos)
        else:
            loc = (MU, len(mu_vertices) - 1 - (walk_pos - ti))
        for end in skipped:
            corner_of_end[end] = loc

    return CommonFace(
        thread_vertices=(lam_vertices, mu_vertices),
        thread_edges=(lam_edges, mu_edges),
        edge_slots=dict(edge_slots),
        occurrences=dict(occurrences),
        corner_of_end=corner_of_end,
    )


# ---------------------------------------------------------------------------
# Blocks (two-edge-connected stretches between pinch points)
# ---------------------------------------------------------------------------


@dataclass
class Blocks:
    # aligned cut positions: block b spans lam_cuts[b]..lam_cuts[b+1] etc.
    lam_cuts: list[int]
    mu_cuts: list[int]

    @property
    def count(self) -> int:
        return max(1, len(self.lam_cuts) - 1)

    def of_occurrence(self, th: int, i: int) -> set[int]:
        cuts = self.lam_cuts if th == LAM else self.mu_cuts
        out = set()
        for b in range(len(cuts) - 1):
            if cuts[b] <= i <= cuts[b + 1]:
                out.add(b)
        return out

    def interval(self, b: int, th: int) -> tuple[int, int]:
        cuts = self.lam_cuts if th == LAM else self.mu_cuts
        return cuts[b], cuts[b + 1]


def _compute_blocks(cf: CommonFace) -> Blocks:
    lam_v, mu_v = cf.thread_vertices
    lam_pos = {}
    for i, v in enumerate(lam_v):
        lam_pos.setdefault(v, i)
    pairs = []
    for j in range(1, len(mu_v) - 1):
        v = mu_v[j]
        if v in lam_pos and 0 < lam_pos[v] < len(lam_v) - 1:
            pairs.append((lam_pos[v], j))
    pairs.sort()
    if [j for _, j in pairs] != sorted(j for _, j in pairs):
        raise NormalizationError("pinch points out of order across the threads")
    lam_cuts = [0] + [i for i, _ in pairs] + [len(lam_v) - 1]
    mu_cuts = [0] + [j for _, j in pairs] + [len(mu_v) - 1]
    return Blocks(lam_cuts=lam_cuts, mu_cuts=mu_cuts)


# ---------------------------------------------------------------------------
# Interior model: separators and columns
# ---------------------------------------------------------------------------


@dataclass
class Separator:
    kind: str  # "chord" or "blob"
    block: int
    left: dict[int, int]  # thread -> leftmost anchor occurrence
    right: dict[int, int]  # thread -> rightmost anchor occurrence
    transitions: set[tuple[int, int]]
    edges: set[int] = field(default_factory=set)
    blob_vertices: frozenset[int] = frozenset()


@dataclass
class Column:
    block: int
    var: int  # True = lambda side
    span: dict[int, tuple[int, int]]
    partner: dict[int, list[int]]


@dataclass
class PartnerPair:
    face: str
    kind: str
    e_lambda: list[int]
    e_mu: list[int]


def _interior_model(
    ed: ExtendedDual, gsp: ShortestPathDag, cf: CommonFace, blocks: Blocks
) -> tuple[list[Separator], list[Column], set[tuple[int, int]], list[tuple[int, int]], int]:
    lam_v, mu_v = cf.thread_vertices
    thread_edge_ids = {e for es in cf.thread_edges for e in es}
    boundary_occ = cf.occurrences
    on_boundary = set(boundary_occ)
    terminals = {ed.terminal_s, ed.terminal_t}

    shared_slots: set[tuple[int, int]] = set()
    separators: list[Separator] = []

    def common_block(occ_sets: list[set[int]]) -> int | None:
        blocks_common = set(range(blocks.count))
        for occ in occ_sets:
            blocks_common &= occ
        return min(blocks_common) if blocks_common else None

    # chords: DAG edges off the boundary with both endpoints on it
    for e, (tail, head) in sorted(gsp.direction.items()):
        if e in thread_edge_ids:
            continue
        if tail not in on_boundary or head not in on_boundary:
            continue
        # parallel to a thread slot: same-thread occurrences one step apart
        parallel = False
        for tt, ti in boundary_occ[tail]:
            for ht, hi in boundary_occ[head]:
                if tt == ht and abs(hi - ti) == 1:
                    shared_slots.add((tt, min(ti, hi)))
                    parallel = True
        if parallel:
            continue
        if tail in terminals or head in terminals:
            # fan edge at a terminal corner: usable by every route, no
            # constraint arises from it
            continue
        placed = False
        for tt, ti in boundary_occ[tail]:
            for ht, hi in boundary_occ[head]:
                if tt == ht:
                    continue
                b = common_block(
                    [blocks.of_occurrence(tt, ti), blocks.of_occurrence(ht, hi)]
                )
                if b is None:
                    continue
                separators.append(
                    Separator(
                        kind="chord",
                        block=b,
                        left={tt: ti, ht: hi},
                        right={tt: ti, ht: hi},
                        transitions={(LAM, LAM), (MU, MU), (tt, ht)},
                        edges={e},
                    )
                )
                placed = True
                break
            if placed:
                break
        if not placed:
            raise NormalizationError("chord endpoints share no block")

    # interior blobs: weakly connected interior vertices of the DAG
    interior = [v for v in gsp.vertices if v not in on_boundary]
    adj: dict[int, set[int]] = defaultdict(set)
    for e, (tail, head) in gsp.direction.items():
        if tail in interior and head in interior:
            adj[tail].add(head)
            adj[head].add(tail)
    unvisited = set(interior)
    tent_spans: dict[int, list[tuple[int, int]]] = {LAM: [], MU: []}
    while unvisited:
        root = unvisited.pop()
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in unvisited:
                    unvisited.discard(y)
                    comp.add(y)
                    stack.append(y)

        s_in = t_out = False
        in_occ: list[list[tuple[int, int]]] = []
        out_occ: list[list[tuple[int, int]]] = []
        for e, (tail, head) in gsp.direction.items():
            if head in comp and tail in on_boundary:
                if tail in terminals:
                    s_in = True
                else:
                    in_occ.append(boundary_occ[tail])
            if tail in comp and head in on_boundary:
                if head in terminals:
                    t_out = True
                else:
                    out_occ.append(boundary_occ[head])
        if not (in_occ or s_in) or not (out_occ or t_out):
            continue
        candidate_blocks = set(range(blocks.count))
        for occs in in_occ + out_occ:
            candidate_blocks &= {
                blk for th, i in occs for blk in blocks.of_occurrence(th, i)
            }
        if not candidate_blocks:
            raise NormalizationError("blob feet share no block")
        b = min(candidate_blocks)

        def in_block(occs: list[tuple[int, int]]) -> list[tuple[int, int]]:
            return [(th, i) for th, i in occs if b in blocks.of_occurrence(th, i)]

        entry: dict[int, int] = {}
        for occs in in_occ:
            for th, i in in_block(occs):
                entry[th] = min(entry.get(th, i), i)
        exit_: dict[int, int] = {}
        for occs in out_occ:
            for th, i in in_block(occs):
                exit_[th] = max(exit_.get(th, i), i)

        # terminal contacts are free anchors: skips reach the thread ends
        end_pos = {th: blocks.interval(blocks.count - 1, th)[1] for th in (LAM, MU)}
        for th in (LAM, MU):
            e_pos = 0 if s_in else entry.get(th)
            x_pos = end_pos[th] if t_out else exit_.get(th)
            if e_pos is not None and x_pos is not None and x_pos > e_pos:
                tent_spans[th].append((e_pos, x_pos))

        sides = set(entry) | set(exit_)
        if len(sides) == 2 and not s_in and not t_out:
            left = {}
            right = {}
            for th in sides:
                vals = [x for x in (entry.get(th), exit_.get(th)) if x is not None]
                left[th] = min(vals)
                right[th] = max(vals)
            transitions = {(LAM, LAM), (MU, MU)}
            for si in entry:
                for so in exit_:
                    transitions.add((si, so))
            separators.append(
                Separator(
                    kind="blob",
                    block=b,
                    left=left,
                    right=right,
                    transitions=transitions,
                    blob_vertices=frozenset(comp),
                )
            )

    # skip zones: slots the canonical directed route hops over (forward
    # blob transits only; tent_spans already collected them per thread)
    skip: set[tuple[int, int]] = set()
    for th in (LAM, MU):
        for a, z in tent_spans[th]:
            for slot in range(a, z):
                skip.add((th, slot))

    # columns per block between consecutive separators
    columns: list[Column] = []
    clauses: list[tuple[int, int]] = []
    var_count = 0
    sep_by_block: dict[int, list[Separator]] = defaultdict(list)
    for sep in separators:
        sep_by_block[sep.block].append(sep)

    for b in range(blocks.count):
        seps = sorted(
            sep_by_block.get(b, []),
            key=lambda s: (min(s.left.get(LAM, 10**9), 10**9), min(s.left.get(MU, 10**9), 10**9)),
        )
        for th in (LAM, MU):
            order = [s.left[th] for s in seps if th in s.left]
            if order != sorted(order):
                raise NormalizationError("separators are not linearly ordered")
        lo = {th: blocks.interval(b, th)[0] for th in (LAM, MU)}
        hi = {th: blocks.interval(b, th)[1] for th in (LAM, MU)}
        prev = dict(lo)
        col_vars: list[Column] = []
        for i in range(len(seps) + 1):
            if i < len(seps):
                nxt = {th: seps[i].left.get(th, prev[th]) for th in (LAM, MU)}
            else:
                nxt = dict(hi)
            col = Column(
                block=b,
                var=var_count,
                span={th: (prev[th], nxt[th]) for th in (LAM, MU)},
                partner={LAM: [], MU: []},
            )
            var_count += 1
            for th in (LAM, MU):
                a, z = col.span[th]
                for slot in range(a, z):
                    if (th, slot) in skip:
                        continue
                    col.partner[th].append(cf.thread_edges[th][slot])
            columns.append(col)
            col_vars.append(col)
            if i < len(seps):
                prev = {th: seps[i].right.get(th, nxt[th]) for th in (LAM, MU)}
        for i, sep in enumerate(seps):
            va, vb = col_vars[i].var, col_vars[i + 1].var
            for combo in ((LAM, MU), (MU, LAM)):
                if combo not in sep.transitions:
                    lit_a = -(va + 1) if combo[0] == LAM else (va + 1)
                    lit_b = -(vb + 1) if combo[1] == LAM else (vb + 1)
                    clauses.append((lit_a, lit_b))

    return separators, columns, shared_slots, clauses, var_count


# ---------------------------------------------------------------------------
# Exterior model: blobs merged through shared corners, walls, segments
# ---------------------------------------------------------------------------


@dataclass
class Wall:
    blob_id: int
    vertices: frozenset[int]
    feet: dict[int, list[int]]  # thread -> sorted occurrence indices
    terminal_feet: set[int] = field(default_factory=set)  # 0 at s, 1 at t


@dataclass
class Segment:
    var: int
    span: dict[int, tuple[int, int]]
    partner: dict[int, list[int]]


class _DSU:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        while self.parent.setdefault(x, x) != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _exterior_blobs(
    ed: ExtendedDual, gsp: ShortestPathDag, cf: CommonFace
) -> tuple[list[Wall], list[Wall], dict[int, set[int]]]:
    gsp_edges = set(gsp.direction)
    boundary_vertices = set(cf.occurrences)
    exterior_ids = [e.id for e in ed.edges if e.id not in gsp_edges and not e.is_loop()]

    dsu = _DSU()
    corner_group: dict[tuple[int, int], int] = {}
    located: dict[int, bool] = {}
    for eid in exterior_ids:
        e = ed.edges[eid]
        in_o = True
        for v, end in ((e.a, (eid, 0)), (e.b, (eid, 1))):
            if v in boundary_vertices:
                loc = cf.corner_of_end.get(end)
                if loc is None:
                    in_o = False
                    continue
                if loc in corner_group:
                    dsu.union(corner_group[loc], eid)
                else:
                    corner_group[loc] = eid
        located[eid] = in_o
    for eid in exterior_ids:
        e = ed.edges[eid]
        for v in (e.a, e.b):
            if v not in boundary_vertices:
                # interior meeting point joins the component
                dsu.union(eid, _vertex_anchor(dsu, v, eid))

    comps: dict[int, set[int]] = defaultdict(set)
    for eid in exterior_ids:
        comps[dsu.find(eid)].add(eid)

    walls: list[Wall] = []
    legs: list[Wall] = []
    blob_edge_map: dict[int, set[int]] = {}
    for comp in comps.values():
        feet: dict[int, set[int]] = defaultdict(set)
        terminal_feet: set[int] = set()
        any_in_o = False
        all_in_o = True
        comp_vertices: set[int] = set()
        for eid in comp:
            e = ed.edges[eid]
            for v, end in ((e.a, (eid, 0)), (e.b, (eid, 1))):
                if v in boundary_vertices:
                    loc = cf.corner_of_end.get(end)
                    if loc is None:
                        all_in_o = False
                        continue
                    any_in_o = True
                    th, occ = loc
                    if th < 0:
                        terminal_feet.add(occ)
                    else:
                        feet[th].add(occ)
                else:
                    comp_vertices.add(v)
        if not any_in_o:
            continue  # lives in another DAG face; unreachable for p'
        if not all_in_o:
            raise NormalizationError("exterior blob touches several DAG faces")
        wall = Wall(
            blob_id=len(blob_edge_map),
            vertices=frozenset(comp_vertices),
            feet={th: sorted(vs) for th, vs in feet.items()},
            terminal_feet=terminal_feet,
        )
        blob_edge_map[wall.blob_id] = comp
        spans = len(wall.feet) == 2 or (bool(terminal_feet) and bool(wall.feet))
        if spans:
            walls.append(wall)
        else:
            legs.append(wall)

    walls.sort(
        key=lambda w: (
            min(w.feet.get(LAM, [10**9])),
            min(w.feet.get(MU, [10**9])),
            0 if 0 in w.terminal_feet else 1,
        )
    )
    return walls, legs, blob_edge_map


def _vertex_anchor(dsu: _DSU, v: int, eid: int) -> int:
    # encode interior vertices as negative DSU nodes so edges meeting at a
    # vertex merge into one blob
    return -(v + 1)


def _exterior_model(
    cf: CommonFace, walls: list[Wall], var_base: int
) -> tuple[list[Segment], list[tuple[int, int]], int]:
    lam_len = len(cf.thread_vertices[LAM]) - 1
    mu_len = len(cf.thread_vertices[MU]) - 1
    end = {LAM: lam_len, MU: mu_len}
    segments: list[Segment] = []
    clauses: list[tuple[int, int]] = []
    var_count = var_base

    def left_anchor(w: Wall, th: int) -> int:
        if th in w.feet:
            return w.feet[th][0]
        return 0 if 0 in w.terminal_feet else end[th]

    def right_anchor(w: Wall, th: int) -> int:
        if th in w.feet:
            return w.feet[th][-1]
        return 0 if 0 in w.terminal_feet else end[th]

    prev = {LAM: 0, MU: 0}
    for i in range(len(walls) + 1):
        nxt = (
            {th: left_anchor(walls[i], th) for th in (LAM, MU)}
            if i < len(walls)
            else dict(end)
        )
        seg = Segment(
            var=var_count,
            span={th: (prev[th], nxt[th]) for th in (LAM, MU)},
            partner={LAM: [], MU: []},
        )
        var_count += 1
        for th in (LAM, MU):
            a, z = seg.span[th]
            seg.partner[th] = [cf.thread_edges[th][slot] for slot in range(a, z)]
        segments.append(seg)
        if i < len(walls):
            prev = {th: right_anchor(walls[i], th) for th in (LAM, MU)}

    # transit clauses: arriving at / leaving a wall on a side without feet
    # is only possible through a terminal corner at the very ends
    for i, w in enumerate(walls):
        va, vb = segments[i].var, segments[i + 1].var
        for side_in in (LAM, MU):
            ok_in = side_in in w.feet or (0 in w.terminal_feet and i == 0)
            for side_out in (LAM, MU):
                ok_out = side_out in w.feet or (
                    1 in w.terminal_feet and i == len(walls) - 1
                )
                if ok_in and ok_out:
                    continue
                lit_a = -(va + 1) if side_in == LAM else (va + 1)
                lit_b = -(vb + 1) if side_out == LAM else (vb + 1)
                clauses.append((lit_a, lit_b))
    return segments, clauses, var_count


# ---------------------------------------------------------------------------
# Model assembly and clause generation
# ---------------------------------------------------------------------------


@dataclass
class StFriendlyModel:
    ed: ExtendedDual
    gsp: ShortestPathDag
    cf: CommonFace
    blocks: Blocks
    columns: list[Column]
    separators: list[Separator]
    walls: list[Wall]
    segments: list[Segment]
    legs: list[Wall]
    shared_slots: set[tuple[int, int]]
    clauses: list[tuple[int, int]]
    var_count: int
    blob_edges: dict[int, set[int]]

    def check_postconditions(self) -> None:
        """Separator order per block (weak dual of each block is a path)
        and wall order along the threads (exterior tree is a caterpillar)."""
        for b in range(self.blocks.count):
            seps = sorted(
                (s for s in self.separators if s.block == b),
                key=lambda s: (s.left.get(LAM, 10**9), s.left.get(MU, 10**9)),
            )
            for prev, nxt in zip(seps, seps[1:]):
                for th in (LAM, MU):
                    if th in prev.right and th in nxt.left and nxt.left[th] < prev.right[th]:
                        raise NormalizationError("separators are not linearly ordered")
        for th in (LAM, MU):
            last = -1
            for w in self.walls:
                feet = w.feet.get(th)
                if not feet:
                    continue
                if feet[0] < last:
                    raise NormalizationError(
                        "walls interleave; exterior is not a caterpillar"
                    )
                last = feet[-1]

    def snapshot(self) -> dict:
        return {
            "threads": self.cf.thread_vertices,
            "columns": [
                {"block": c.block, "var": c.var, "span": c.span, "partner": c.partner}
                for c in self.columns
            ],
            "separators": [
                {
                    "kind": s.kind,
                    "block": s.block,
                    "left": s.left,
                    "right": s.right,
                    "transitions": sorted(s.transitions),
                }
                for s in self.separators
            ],
            "walls": [
                {"feet": w.feet, "terminal_feet": sorted(w.terminal_feet)}
                for w in self.walls
            ],
            "segments": [
                {"var": g.var, "span": g.span, "partner": g.partner}
                for g in self.segments
            ],
            "clauses": self.clauses,
        }


def build_st_friendly(ed: ExtendedDual, gsp: ShortestPathDag) -> StFriendlyModel:
    cf = check_common_face(ed, gsp)
    if cf is None:
        raise ValueError("terminals do not share a face of the shortest-path DAG")
    return normalize(ed, gsp, cf)


def normalize(ed: ExtendedDual, gsp: ShortestPathDag, cf: CommonFace) -> StFriendlyModel:
    blocks = _compute_blocks(cf)
    separators, columns, shared_slots, clauses, var_count = _interior_model(
        ed, gsp, cf, blocks
    )
    walls, legs, blob_edge_map = _exterior_blobs(ed, gsp, cf)
    segments, wall_clauses, var_count = _exterior_model(cf, walls, var_count)
    model = StFriendlyModel(
        ed=ed,
        gsp=gsp,
        cf=cf,
        blocks=blocks,
        columns=columns,
        separators=separators,
        walls=walls,
        segments=segments,
        legs=legs,
        shared_slots=shared_slots,
        clauses=clauses + wall_clauses,
        var_count=var_count,
        blob_edges=blob_edge_map,
    )
    model.check_postconditions()
    _add_conflict_clauses(model)
    return model


def _add_conflict_clauses(model: StFriendlyModel) -> None:
    ed, cf = model.ed, model.cf
    p_uses: dict[int, list[int]] = defaultdict(list)
    for col in model.columns:
        for th in (LAM, MU):
            lit = (col.var + 1) if th == LAM else -(col.var + 1)
            for e in col.partner[th]:
                p_uses[e].append(lit)

    bridge_edges = {e for e, slots in cf.edge_slots.items() if len(slots) >= 2}
    shared_edges = {cf.thread_edges[th][slot] for (th, slot) in model.shared_slots}

    for seg in model.segments:
        for th in (LAM, MU):
            seg_lit = (seg.var + 1) if th == LAM else -(seg.var + 1)
            for e in seg.partner[th]:
                kind = ed.edges[e].kind
                if e in bridge_edges and kind == CROSSING:
                    model.clauses.append((-seg_lit, -seg_lit))
                    continue
                if e in bridge_edges and kind == ATTACHMENT:
                    continue  # shareable terminal attachment
                if e in shared_edges:
                    continue  # a parallel chord gives the directed path a spare
                for p_lit in p_uses.get(e, []):
                    model.clauses.append((-seg_lit, -p_lit))


def extract_partners(
    model: StFriendlyModel,
) -> tuple[list[PartnerPair], list[PartnerPair], list[tuple[int, int]]]:
    interior = [
        PartnerPair(
            face=f"column-{c.var}",
            kind="interior",
            e_lambda=list(c.partner[LAM]),
            e_mu=list(c.partner[MU]),
        )
        for c in model.columns
    ]
    exterior = [
        PartnerPair(
            face=f"segment-{s.var}",
            kind="exterior",
            e_lambda=list(s.partner[LAM]),
            e_mu=list(s.partner[MU]),
        )
        for s in model.segments
    ]
    return interior, exterior, list(model.clauses)


# ---------------------------------------------------------------------------
# 2-SAT solver (implication graph + SCC)
# ---------------------------------------------------------------------------


def solve_two_sat(var_count: int, clauses: list[tuple[int, int]]) -> list[bool] | None:
    """Literals are +-(var+1); returns an assignment or None."""

    def node(lit: int) -> int:
        v = abs(lit) - 1
        return 2 * v + (0 if lit > 0 else 1)

    n = 2 * var_count
    graph: list[list[int]] = [[] for _ in range(n)]
    for a, b in clauses:
        graph[node(-a)].append(node(b))
        graph[node(-b)].append(node(a))

    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 1
    comp_count = 0

    for root in range(n):
        if index[root]:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(graph[v])):
                w = graph[v][i]
                if not index[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            work.pop()
            if work:
                pv, _ = work[-1]
                low[pv] = min(low[pv], low[v])

    assignment = []
    for v in range(var_count):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        assignment.append(comp[2 * v] < comp[2 * v + 1])
    return assignment


# ---------------------------------------------------------------------------
# Decision + witness reconstruction
# ---------------------------------------------------------------------------


@dataclass
class Decision:
    yes: bool
    path: DualPath | None = None
    witness: DualPath | None = None
    model: StFriendlyModel | None = None
    assignment: list[bool] | None = None


def decide(ed: ExtendedDual) -> Decision:
    gsp = build_gsp(ed)
    cf = check_common_face(ed, gsp)
    if cf is None:
        raise ValueError(
            "special case precondition violated: terminals share no face of "
            "the shortest-path DAG"
        )
    model = normalize(ed, gsp, cf)
    assignment = solve_two_sat(model.var_count, model.clauses)
    if assignment is None:
        return Decision(yes=False, model=model)
    q = _reconstruct_undirected(model, assignment)
    p = _reconstruct_directed(model, assignment, q)
    _validate_pair(model, p, q)
    return Decision(yes=True, path=p, witness=q, model=model, assignment=assignment)


def _reconstruct_directed(
    model: StFriendlyModel, assignment: list[bool], witness: DualPath
) -> DualPath:
    """Shortest directed route avoiding every edge the witness claims."""
    ed, gsp = model.ed, model.gsp
    banned = {
        e for e in witness.edge_ids if ed.edges[e].kind == CROSSING
    }
    shared_edges = {
        model.cf.thread_edges[th][slot] for (th, slot) in model.shared_slots
    }
    banned -= shared_edges
    bridge_attachments = {
        e
        for e, slots in model.cf.edge_slots.items()
        if len(slots) >= 2 and ed.edges[e].kind == ATTACHMENT
    }
    banned -= bridge_attachments
    out: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e, (tail, head) in gsp.direction.items():
        if e in banned:
            continue
        out[tail].append((head, e))
    for v in out:
        out[v].sort()
    s, t = ed.terminal_s, ed.terminal_t
    parent: dict[int, tuple[int, int]] = {}
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, e in out.get(u, []):
            if v not in seen:
                seen.add(v)
                parent[v] = (u, e)
                queue.append(v)
    if t not in seen:
        raise NormalizationError("no directed route avoids the witness")
    vertices = [t]
    edges = []
    v = t
    while v != s:
        u, e = parent[v]
        edges.append(e)
        vertices.append(u)
        v = u
    p = DualPath(vertices=tuple(reversed(vertices)), edge_ids=tuple(reversed(edges)))
    p.validate(ed)
    return p


def _reconstruct_undirected(model: StFriendlyModel, assignment: list[bool]) -> DualPath:
    """Stitch the witness segment by segment, hopping through wall blobs."""
    ed, cf = model.ed, model.cf
    s, t = ed.terminal_s, ed.terminal_t
    boundary_vertices = set(cf.occurrences)

    def blob_route(wall: Wall, start: int, goal: int) -> tuple[list[int], list[int]]:
        """BFS inside the blob; boundary vertices may be passed through,
        but only within a single corner (which is how blobs were merged)."""
        comp = model.blob_edges[wall.blob_id]

        def node_of(eid: int, side: int) -> tuple:
            v = ed.edges[eid].a if side == 0 else ed.edges[eid].b
            if v in boundary_vertices:
                corner = cf.corner_of_end.get((eid, side))
                return ("corner", corner, v)
            return ("vertex", v)

        adj: dict[tuple, list[tuple[tuple, int]]] = defaultdict(list)
        nodes_of_vertex: dict[int, list[tuple]] = defaultdict(list)
        for eid in comp:
            na, nb = node_of(eid, 0), node_of(eid, 1)
            adj[na].append((nb, eid))
            adj[nb].append((na, eid))
            for nd in (na, nb):
                v = nd[2] if nd[0] == "corner" else nd[1]
                if nd not in nodes_of_vertex[v]:
                    nodes_of_vertex[v].append(nd)
        for nd in adj:
            adj[nd].sort(key=lambda x: (str(x[0]), x[1]))

        if start == goal:
            return [start], []
        starts = nodes_of_vertex.get(start, [])
        goals = set(nodes_of_vertex.get(goal, []))
        if not starts or not goals:
            raise NormalizationError("wall blob does not touch its feet")
        terminals = {s, t}
        parent: dict[tuple, tuple[tuple, int]] = {}
        seen = set(starts)
        queue = deque(starts)
        hit = None
        while queue:
            u = queue.popleft()
            if u in goals:
                hit = u
                break
            for v, e in adj.get(u, []):
                if v[0] == "corner" and v[2] in terminals and v not in goals:
                    continue  # terminals are endpoints, never waypoints
                if v not in seen:
                    seen.add(v)
                    parent[v] = (u, e)
                    queue.append(v)
        if hit is None:
            raise NormalizationError("wall blob does not connect its feet")
        nodes = [hit]
        es: list[int] = []
        v = hit
        while v in parent:
            u, e = parent[v]
            es.append(e)
            nodes.append(u)
            v = u
        nodes.reverse()
        es.reverse()
        vs = [nd[2] if nd[0] == "corner" else nd[1] for nd in nodes]
        return vs, es

    vertices: list[int] = [s]
    edges: list[int] = []

    def walk_thread(th: int, a: int, b: int) -> None:
        tv, te = cf.thread_vertices[th], cf.thread_edges[th]
        if vertices[-1] != tv[a]:
            raise NormalizationError("witness stitching lost its position")
        for i in range(a, b):
            edges.append(te[i])
            vertices.append(tv[i + 1])

    walls = model.walls
    segs = model.segments
    end = {LAM: len(cf.thread_vertices[LAM]) - 1, MU: len(cf.thread_vertices[MU]) - 1}
    for i, seg in enumerate(segs):
        side = LAM if assignment[seg.var] else MU
        a, b = seg.span[side]
        walk_thread(side, a, b)
        if i < len(walls):
            wall = walls[i]
            nxt_side = LAM if assignment[segs[i + 1].var] else MU
            start = vertices[-1]
            if nxt_side in wall.feet:
                goal = cf.thread_vertices[nxt_side][wall.feet[nxt_side][-1]]
            elif 1 in wall.terminal_feet and i == len(walls) - 1:
                goal = t
            else:
                raise NormalizationError("wall transit without a landing foot")
            if side not in wall.feet and not (0 in wall.terminal_feet and i == 0):
                raise NormalizationError("wall transit without a takeoff foot")
            vs, es = blob_route(wall, start, goal)
            if vs[0] != vertices[-1]:
                raise NormalizationError("wall hop does not start at the walk position")
            for v2, e2 in zip(vs[1:], es):
                vertices.append(v2)
                edges.append(e2)
    if vertices[-1] != t:
        raise NormalizationError("witness stitching did not reach the far terminal")
    # a blob hop may graze a vertex a later stretch walks through; cutting
    # the loop keeps a valid path using a subset of the claimed edges
    out_v: list[int] = [vertices[0]]
    out_e: list[int] = []
    pos = {vertices[0]: 0}
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
    q = DualPath(vertices=tuple(out_v), edge_ids=tuple(out_e))
    q.validate(ed)
    return q


def _validate_pair(model: StFriendlyModel, p: DualPath, q: DualPath) -> None:
    ed = model.ed
    if len(p) != model.gsp.dist:
        raise NormalizationError("reconstructed path is not shortest")
    p_cross = {e for e in p.edge_ids if ed.edges[e].kind == CROSSING}
    q_cross = {e for e in q.edge_ids if ed.edges[e].kind == CROSSING}
    if p_cross & q_cross:
        raise NormalizationError("witness shares a crossing edge with the path")
    if not non_crossing(ed, p, q):
        raise NormalizationError("witness crosses the path")
    if not is_consistent(ed, p):
        raise NormalizationError("reconstructed shortest path is not consistent")
