"""BFS shortest st-paths in the extended dual and the DAG of all of them.

Ties are broken by lowest dual-vertex id throughout so that every caller
sees reproducible paths.  Loop edges (duals of bridges) never lie on a
simple path and are skipped.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .extended_dual import DualPath, ExtendedDual

__all__ = ["ShortestPathDag", "bfs_distances", "bfs_shortest", "build_gsp", "enumerate_shortest"]


@dataclass(frozen=True)
class ShortestPathDag:
    """All shortest st-paths: edge e directed a->b iff it is tight."""

    dist: int
    dist_from_s: dict[int, int]
    dist_to_t: dict[int, int]
    # dual edge id -> (tail, head); only tight edges appear
    direction: dict[int, tuple[int, int]]
    # tail -> [(head, edge id)] sorted for deterministic traversal
    out_edges: dict[int, list[tuple[int, int]]]
    vertices: frozenset[int]

    def is_acyclic(self) -> bool:
        # tight edges strictly increase dist_from_s, so cycles are impossible
        return all(
            self.dist_from_s[b] == self.dist_from_s[a] + 1 for a, b in self.direction.values()
        )


def _adjacency(ed: ExtendedDual) -> dict[int, list[tuple[int, int]]]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(ed.vertex_count)}
    for e in ed.edges:
        if e.is_loop():
            continue
        adj[e.a].append((e.b, e.id))
        adj[e.b].append((e.a, e.id))
    for v in adj:
        adj[v].sort()
    return adj


def bfs_distances(ed: ExtendedDual, source: int) -> dict[int, int]:
    adj = _adjacency(ed)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def bfs_shortest(ed: ExtendedDual) -> DualPath:
    """One shortest st-path (lowest-id tie-breaking)."""
    adj = _adjacency(ed)
    s, t = ed.terminal_s, ed.terminal_t
    parent: dict[int, tuple[int, int]] = {}
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, e in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = (u, e)
                queue.append(v)
    if t not in dist:
        raise RuntimeError("terminals disconnected in the extended dual")
    vertices = [t]
    edge_ids = []
    v = t
    while v != s:
        u, e = parent[v]
        edge_ids.append(e)
        vertices.append(u)
        v = u
    path = DualPath(vertices=tuple(reversed(vertices)), edge_ids=tuple(reversed(edge_ids)))
    path.validate(ed)
    return path


def build_gsp(ed: ExtendedDual) -> ShortestPathDag:
    dist_s = bfs_distances(ed, ed.terminal_s)
    dist_t = bfs_distances(ed, ed.terminal_t)
    total = dist_s[ed.terminal_t]
    direction: dict[int, tuple[int, int]] = {}
    out_edges: dict[int, list[tuple[int, int]]] = {}
    vertices: set[int] = set()
    for e in ed.edges:
        if e.is_loop():
            continue
        for tail, head in ((e.a, e.b), (e.b, e.a)):
            ds, dt = dist_s.get(tail), dist_t.get(head)
            if ds is not None and dt is not None and ds + 1 + dt == total:
                direction[e.id] = (tail, head)
                out_edges.setdefault(tail, []).append((head, e.id))
                vertices.update((tail, head))
                break
    for v in out_edges:
        out_edges[v].sort()
    dag = ShortestPathDag(
        dist=total,
        dist_from_s={v: dist_s[v] for v in vertices},
        dist_to_t={v: dist_t[v] for v in vertices},
        direction=direction,
        out_edges=out_edges,
        vertices=frozenset(vertices),
    )
    assert dag.is_acyclic()
    return dag


def enumerate_shortest(ed: ExtendedDual, cap: int) -> list[DualPath]:
    """Up to cap distinct shortest st-paths, lexicographic by vertex ids.

    The DAG restricted to tight edges can hold exponentially many paths;
    callers keep cap at desk scale.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    dag = build_gsp(ed)
    s, t = ed.terminal_s, ed.terminal_t
    found: list[DualPath] = []

    def dfs(v: int, vertices: list[int], edge_ids: list[int]) -> bool:
        if v == t:
            path = DualPath(vertices=tuple(vertices), edge_ids=tuple(edge_ids))
            path.validate(ed)
            found.append(path)
            return len(found) >= cap
        for head, e in dag.out_edges.get(v, []):
            if dfs(head, vertices + [head], edge_ids + [e]):
                return True
        return False

    dfs(s, [s], [])
    return found
