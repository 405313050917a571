"""Randomized search for a consistent st-path of a given length.

Draw a uniform left/right labeling of the primal vertices; the labeling
orients every dual edge whose crossed endpoints got different labels and
removes the rest, so every st-path of the surviving directed graph is
compatible with the labeling and hence consistent.  A consistent path of
length k survives a random labeling with probability at least (1/4)^k,
so batches of 4^k draws succeed with constant probability and repeating
ceil(log2(1/delta)) batches pushes the failure rate below delta.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

from .consistency import L, R
from .extended_dual import ATTACHMENT, DualPath, ExtendedDual

__all__ = ["LabeledDirectedDual", "FptResult", "directed_subgraph", "fpt_search"]


@dataclass(frozen=True)
class LabeledDirectedDual:
    ed: ExtendedDual
    labeling: dict[int, str]
    # tail -> [(head, edge id)]; attachment edges appear in both directions
    out_edges: dict[int, list[tuple[int, int]]]


def directed_subgraph(ed: ExtendedDual, labeling: dict[int, str]) -> LabeledDirectedDual:
    """Keep each crossing edge only in the direction that puts an L-labeled
    endpoint on the left; drop same-label edges; attachments stay two-way."""
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(ed.vertex_count)}
    for e in ed.edges:
        if e.kind == ATTACHMENT:
            out[e.a].append((e.b, e.id))
            out[e.b].append((e.a, e.id))
            continue
        if e.is_loop():
            continue  # crossed endpoints coincide in the dual, never usable
        u, v = e.primal  # traversing a->b puts v on the left
        lu, lv = labeling.get(u), labeling.get(v)
        if lu == lv:
            continue
        if lv == L and lu == R:
            out[e.a].append((e.b, e.id))
        elif lv == R and lu == L:
            out[e.b].append((e.a, e.id))
    for v in out:
        out[v].sort()
    return LabeledDirectedDual(ed=ed, labeling=labeling, out_edges=out)


def shortest_in_subgraph(sub: LabeledDirectedDual) -> DualPath | None:
    ed = sub.ed
    s, t = ed.terminal_s, ed.terminal_t
    parent: dict[int, tuple[int, int]] = {}
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for v, eid in sub.out_edges[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = (u, eid)
                queue.append(v)
    if t not in dist:
        return None
    vertices = [t]
    edge_ids = []
    v = t
    while v != s:
        u, eid = parent[v]
        edge_ids.append(eid)
        vertices.append(u)
        v = u
    path = DualPath(vertices=tuple(reversed(vertices)), edge_ids=tuple(reversed(edge_ids)))
    path.validate(ed)
    return path


@dataclass
class FptResult:
    path: DualPath | None
    k: int
    delta: float
    seed: int
    iterations_run: int
    batch_outcomes: list[int | None] = field(default_factory=list)  # best length per batch

    @property
    def found(self) -> bool:
        return self.path is not None


def fpt_search(ed: ExtendedDual, k: int, delta: float, seed: int) -> FptResult:
    """Search for a consistent st-path of length at most k.

    Runs ceil(log2(1/delta)) batches of 4**k uniform labelings each and
    keeps the shortest surviving st-path; a batch stops early once a path
    of the unbeatable length dist(s,t) appears.  Absence of a result is a
    legitimate one-sided error.
    """
    if k < 2:
        raise ValueError("k must be at least 2 (shortest possible st-path)")
    if not 0 < delta < 1:
        raise ValueError("delta must be a probability strictly between 0 and 1")

    from .shortest_paths import bfs_distances

    dist = bfs_distances(ed, ed.terminal_t)[ed.terminal_s]
    batches = max(1, math.ceil(math.log2(1.0 / delta)))
    per_batch = 4**k
    primal_n = ed.graph.vertex_count

    best: DualPath | None = None
    iterations = 0
    outcomes: list[int | None] = []
    done = False
    for batch in range(batches):
        batch_best: int | None = None
        for it in range(per_batch):
            rng = random.Random(f"{seed}:{batch}:{it}")
            labeling = {v: (L if rng.random() < 0.5 else R) for v in range(primal_n)}
            iterations += 1
            path = shortest_in_subgraph(directed_subgraph(ed, labeling))
            if path is None or len(path) > k:
                continue
            if batch_best is None or len(path) < batch_best:
                batch_best = len(path)
            if best is None or len(path) < len(best):
                best = path
            if len(best) == dist:
                done = True
                break
        outcomes.append(batch_best)
        if done:
            break
    return FptResult(
        path=best,
        k=k,
        delta=delta,
        seed=seed,
        iterations_run=iterations,
        batch_outcomes=outcomes,
    )


def fpt_search_auto(
    ed: ExtendedDual, delta: float, seed: int, cap: int | None = None
) -> FptResult:
    """Double k from dist(s,t) until a path is found or the cap is hit."""
    from .shortest_paths import bfs_distances

    dist = bfs_distances(ed, ed.terminal_t)[ed.terminal_s]
    if cap is None:
        cap = 4 * dist + 8
    k = dist
    while True:
        result = fpt_search(ed, k, delta, seed)
        if result.found or k >= cap:
            return result
        k = min(cap, 2 * k)
