"""Brute-force oracle and instance generators for the test corpus.

The oracle enumerates simple st-paths in the extended dual by iterative
deepening and prunes any prefix whose induced labeling already contains a
two-sided vertex; extending a path never removes a side, so the pruning
is sound.  It is exponential by design and only run at desk scale.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .embedding import EmbeddedGraph, extract_faces, max_degree, validate_embedding
from .extended_dual import ATTACHMENT, DualPath, ExtendedDual, build_extended_dual
from .consistency import is_consistent, non_crossing
from .shortest_paths import bfs_distances

__all__ = [
    "OracleResult",
    "oracle_shortest_consistent",
    "oracle_lemma1_witness",
    "gen_fig2",
    "gen_random_planar",
    "default_oracle_bound",
    "build_manifest",
]


@dataclass(frozen=True)
class OracleResult:
    optimum_length: int | None  # None: no consistent path within the bound
    witness: DualPath | None
    search_bound: int

    @property
    def conclusive(self) -> bool:
        return self.optimum_length is not None

    @property
    def optimum_crossings(self) -> int | None:
        return None if self.optimum_length is None else self.optimum_length - 2


def default_oracle_bound(dist: int) -> int:
    return 3 * dist + 6


def _step_sides(ed: ExtendedDual, edge_id: int, tail: int) -> tuple[int, int] | None:
    """(left, right) primal endpoints when traversing edge_id out of tail."""
    e = ed.edges[edge_id]
    if e.primal is None:
        return None
    u, v = e.primal
    return (v, u) if tail == e.a else (u, v)


def oracle_shortest_consistent(ed: ExtendedDual, bound: int | None = None) -> OracleResult:
    """Shortest consistent st-path by exhaustive search up to `bound`."""
    s, t = ed.terminal_s, ed.terminal_t
    dist_t = bfs_distances(ed, t)
    dist = dist_t[s]
    if bound is None:
        bound = default_oracle_bound(dist)
    if bound < 2:
        raise ValueError("bound must be at least 2")

    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(ed.vertex_count)}
    for e in ed.edges:
        if e.is_loop():
            continue
        adj[e.a].append((e.b, e.id))
        adj[e.b].append((e.a, e.id))
    for v in adj:
        adj[v].sort()

    vertices = [s]
    edge_ids: list[int] = []
    on_path = {s}
    lefts: dict[int, int] = {}
    rights: dict[int, int] = {}

    def dfs(v: int, target: int) -> bool:
        if v == t:
            return len(edge_ids) == target
        for w, eid in adj[v]:
            if w in on_path or (w == t and len(edge_ids) + 1 != target):
                continue
            if len(edge_ids) + 1 + dist_t.get(w, 0) > target:
                continue
            sides = _step_sides(ed, eid, v)
            if sides is not None:
                left, right = sides
                if rights.get(left) or lefts.get(right):
                    continue
                lefts[left] = lefts.get(left, 0) + 1
                rights[right] = rights.get(right, 0) + 1
            vertices.append(w)
            edge_ids.append(eid)
            on_path.add(w)
            if dfs(w, target):
                return True
            on_path.discard(w)
            edge_ids.pop()
            vertices.pop()
            if sides is not None:
                left, right = sides
                lefts[left] -= 1
                if not lefts[left]:
                    del lefts[left]
                rights[right] -= 1
                if not rights[right]:
                    del rights[right]
        return False

    for target in range(dist, bound + 1):
        if dfs(s, target):
            path = DualPath(vertices=tuple(vertices), edge_ids=tuple(edge_ids))
            path.validate(ed)
            assert is_consistent(ed, path)
            return OracleResult(optimum_length=target, witness=path, search_bound=bound)
    return OracleResult(optimum_length=None, witness=None, search_bound=bound)


def oracle_lemma1_witness(ed: ExtendedDual, p: DualPath) -> DualPath | None:
    """Exhaustive search for an st-path disjoint from p's crossing edges and
    non-crossing with p.

    Attachment edges may be shared: the witness models the rest of the line
    through the inserted segment, and only crossed primal edges matter.
    """
    p.validate(ed)
    s, t = ed.terminal_s, ed.terminal_t
    p_crossings = {eid for eid in p.edge_ids if ed.edges[eid].kind != ATTACHMENT}

    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(ed.vertex_count)}
    for e in ed.edges:
        if e.is_loop() or e.id in p_crossings:
            continue
        adj[e.a].append((e.b, e.id))
        adj[e.b].append((e.a, e.id))
    for v in adj:
        adj[v].sort()

    vertices = [s]
    edge_ids: list[int] = []
    on_path = {s}

    def dfs(v: int) -> DualPath | None:
        if v == t:
            q = DualPath(vertices=tuple(vertices), edge_ids=tuple(edge_ids))
            q.validate(ed)
            if non_crossing(ed, p, q):
                return q
            return None
        for w, eid in adj[v]:
            if w in on_path:
                continue
            vertices.append(w)
            edge_ids.append(eid)
            on_path.add(w)
            found = dfs(w)
            if found is not None:
                return found
            on_path.discard(w)
            edge_ids.pop()
            vertices.pop()
        return None

    return dfs(s)


# ---------------------------------------------------------------------------
# Random embedded instances
# ---------------------------------------------------------------------------


def _rotations_from_points(points: np.ndarray, adjacency: list[set[int]]) -> EmbeddedGraph:
    rotations = []
    for v, nbrs in enumerate(adjacency):
        angles = sorted(
            (float(np.arctan2(points[u][1] - points[v][1], points[u][0] - points[v][0])), u)
            for u in nbrs
        )
        rotations.append(tuple(u for _, u in angles))
    return EmbeddedGraph(rotations=tuple(rotations))


def _connected_after_removal(adjacency: list[set[int]], u: int, v: int) -> bool:
    n = len(adjacency)
    start = 0
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if (x, y) in ((u, v), (v, u)):
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def _delaunay_adjacency(points: np.ndarray) -> list[set[int]]:
    tri = Delaunay(points)
    adjacency: list[set[int]] = [set() for _ in range(len(points))]
    for simplex in tri.simplices:
        for i in range(3):
            a, b = int(simplex[i]), int(simplex[(i + 1) % 3])
            adjacency[a].add(b)
            adjacency[b].add(a)
    return adjacency


def _inner_dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """Dual of an embedded triangulation minus the outer face: max degree 3."""
    faces = extract_faces(g)
    outer = max(range(len(faces)), key=lambda i: len(faces[i].boundary))
    face_of: dict[tuple[int, int], int] = {}
    for f in faces:
        for dart in f.boundary:
            face_of[dart] = f.id
    inner = [f for f in faces if f.id != outer]
    ids = {f.id: i for i, f in enumerate(inner)}
    rotations: list[tuple[int, ...]] = [() for _ in inner]
    for f in faces:
        if f.id == outer:
            continue
        ring = []
        for u, v in f.boundary:
            nb = face_of[(v, u)]
            if nb != outer:
                ring.append(ids[nb])
        rotations[ids[f.id]] = tuple(ring)
    return EmbeddedGraph(rotations=tuple(rotations))


def _prune_to_degree(
    adjacency: list[set[int]], delta_max: int, rng: random.Random
) -> None:
    over = [v for v in range(len(adjacency)) if len(adjacency[v]) > delta_max]
    guard = 0
    while over:
        guard += 1
        if guard > 10_000:
            raise RuntimeError("degree pruning did not converge")
        v = over[0]
        candidates = sorted(adjacency[v])
        rng.shuffle(candidates)
        for u in candidates:
            if _connected_after_removal(adjacency, v, u):
                adjacency[v].discard(u)
                adjacency[u].discard(v)
                break
        else:
            raise RuntimeError("cannot reduce degree without disconnecting")
        over = [w for w in range(len(adjacency)) if len(adjacency[w]) > delta_max]


def _random_deletions(
    adjacency: list[set[int]], count: int, rng: random.Random
) -> None:
    edges = sorted({(min(u, v), max(u, v)) for u in range(len(adjacency)) for v in adjacency[u]})
    rng.shuffle(edges)
    removed = 0
    for u, v in edges:
        if removed >= count:
            break
        if len(adjacency[u]) <= 2 or len(adjacency[v]) <= 2:
            continue
        if _connected_after_removal(adjacency, u, v):
            adjacency[u].discard(v)
            adjacency[v].discard(u)
            removed += 1


def _pick_terminals(g: EmbeddedGraph, rng: random.Random) -> tuple[int, int] | None:
    n = g.vertex_count
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if not g.has_edge(a, b)]
    if not pairs:
        return None
    return pairs[rng.randrange(len(pairs))]


def gen_random_planar(n: int, delta_max: int, seed: int) -> tuple[EmbeddedGraph, int, int]:
    """Random connected simple embedded planar graph with max degree at most
    delta_max and non-adjacent terminals; deterministic in the seed."""
    if n < 4:
        raise ValueError("need at least 4 vertices")
    if delta_max < 2:
        raise ValueError("delta_max must be at least 2")

    rng = random.Random(seed)
    for attempt in range(64):
        npr = np.random.default_rng((seed, attempt))
        if delta_max == 2:
            g = EmbeddedGraph(
                rotations=tuple(((v - 1) % n, (v + 1) % n) for v in range(n))
            )
        elif delta_max == 3:
            # inner dual of a triangulation is cubic-ish; size via point count
            pts = npr.uniform(size=(max(4, n // 2 + 2), 2))
            try:
                base = _rotations_from_points(pts, _delaunay_adjacency(pts))
            except Exception:
                continue
            if not validate_embedding(base).ok:
                continue
            g = _inner_dual(base)
            if g.vertex_count < 4:
                continue
            adjacency = [set(rot) for rot in g.rotations]
            _random_deletions(adjacency, rng.randrange(0, 3), rng)
            rotations = tuple(
                tuple(u for u in rot if u in adjacency[v]) for v, rot in enumerate(g.rotations)
            )
            g = EmbeddedGraph(rotations=rotations)
        else:
            pts = npr.uniform(size=(n, 2))
            try:
                adjacency = _delaunay_adjacency(pts)
            except Exception:
                continue
            try:
                _prune_to_degree(adjacency, delta_max, rng)
            except RuntimeError:
                continue
            _random_deletions(adjacency, rng.randrange(0, max(1, n // 4)), rng)
            if any(not adj for adj in adjacency):
                continue
            g = _rotations_from_points(pts, adjacency)

        if g.vertex_count > n:
            continue
        report = validate_embedding(g)
        if not report.ok:
            continue
        if max_degree(g) > delta_max:
            continue
        terminals = _pick_terminals(g, rng)
        if terminals is None:
            continue
        s, t = terminals
        return g, s, t
    raise RuntimeError(f"could not generate an instance for n={n}, delta_max={delta_max}, seed={seed}")


# ---------------------------------------------------------------------------
# Unbounded-ratio family
# ---------------------------------------------------------------------------


def gen_fig2(m: int) -> tuple[EmbeddedGraph, int, int]:
    """m-th member of the degree-6 "hub" family: every shortest st-path is
    inconsistent.

    A degree-6 hub v is surrounded by six zones in cyclic order: the s
    pocket, an open flank, a closed guard chamber, the t pocket, the other
    open flank and a second guard chamber.  Both flanks belong to one outer
    face, so the unique two-crossing route leaves the s pocket over one
    flank and enters the t pocket from the other, forcing v onto both sides
    of the segment.  Consistent routes must detour through a guard chamber
    and cost at least one extra crossing.  The parameter m deepens the
    shells around the pocket backs; the hub mechanism itself is pinned to
    degree six, so the optimum plateaus while instances grow.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    import math

    coords: dict[int, tuple[float, float]] = {0: (0.0, 0.0)}
    edges: list[tuple[int, int]] = []
    radius = 2.0
    for i, ang in enumerate([30, 90, 150, 210, 270, 330], start=1):
        coords[i] = (radius * math.cos(math.radians(ang)), radius * math.sin(math.radians(ang)))
        edges.append((0, i))
    n1, n2, n3, n4, n5, n6 = 1, 2, 3, 4, 5, 6
    nxt = 7

    edges += [(n2, n3), (n5, n6)]  # guard rims (closed chambers)

    edges.append((n6, n1))  # s pocket rim
    s = nxt
    nxt += 1
    coords[s] = (1.1, 0.0)
    edges += [(s, n6), (s, n1)]

    edges.append((n3, n4))  # t pocket rim
    t = nxt
    nxt += 1
    coords[t] = (-1.1, 0.0)
    edges += [(t, n3), (t, n4)]

    def add_shells(top: int, bottom: int, sign: float, depth: int) -> None:
        """Telescoping nested arcs outside a pocket rim.

        Arc k hangs on the midpoints of arc k-1, so anchor degrees stay
        bounded no matter how deep the tube gets.
        """
        nonlocal nxt, edges
        anch_a, anch_b = top, bottom
        for k in range(depth):
            r = radius + 0.8 * (k + 1)
            hi = nxt
            nxt += 1
            lo = nxt
            nxt += 1
            coords[hi] = (sign * r, 0.45)
            coords[lo] = (sign * r, -0.45)
            edges += [(anch_a, hi), (hi, lo), (lo, anch_b)]
            anch_a, anch_b = hi, lo

    # shells over the pocket backs, depth m (keeps every redirected back
    # door at least one crossing longer than the inconsistent short cut)
    add_shells(n1, n6, 1.0, m)
    add_shells(n4, n3, -1.0, m)

    n = nxt
    pts = np.zeros((n, 2))
    for i, xy in coords.items():
        pts[i] = xy
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    g = _rotations_from_points(pts, adjacency)
    report = validate_embedding(g)
    assert report.ok, report.messages
    assert max_degree(g) == 6
    return g, s, t


# ---------------------------------------------------------------------------
# Corpus manifest
# ---------------------------------------------------------------------------


def build_manifest(specs: list[dict], bound_factor: int = 0) -> dict:
    """Oracle expectations for a list of generator specs.

    Each spec is {"family": "random"|"fig2", ...params}.  Returns a JSON-able
    manifest of instances with their shortest-path distance and oracle
    optimum (None when the oracle is inconclusive at the default bound).
    """
    entries = []
    for spec in specs:
        if spec["family"] == "random":
            g, s, t = gen_random_planar(spec["n"], spec["delta_max"], spec["seed"])
        elif spec["family"] == "fig2":
            g, s, t = gen_fig2(spec["m"])
        else:
            raise ValueError(f"unknown family {spec['family']!r}")
        ed = build_extended_dual(g, s, t)
        dist = bfs_distances(ed, ed.terminal_t)[ed.terminal_s]
        res = oracle_shortest_consistent(ed)
        entries.append(
            {
                "spec": spec,
                "vertices": g.vertex_count,
                "edges": g.edge_count,
                "max_degree": max_degree(g),
                "terminals": [s, t],
                "dist": dist,
                "oracle_optimum": res.optimum_length,
                "oracle_bound": res.search_bound,
            }
        )
    return {"instances": entries}


def manifest_to_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True)
