"""Embedded multigraphs as rotation systems over half-edges.

A half-edge is (edge_id, side): side 0 originates at the edge's `a`
endpoint, side 1 at `b`.  Each vertex stores the CCW cyclic order of the
half-edges originating there.  Faces are orbits of h -> rotation
predecessor of twin(h), which keeps every face on the left of its darts,
matching the primal convention in embedding.py.

Supports the mutations needed by the shortest-path normalization pipeline:
edge/vertex deletion and edge contraction (rotation splice).
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["HalfEdge", "RotationMultigraph"]

HalfEdge = tuple[int, int]  # (edge id, side)


@dataclass
class RotationMultigraph:
    # endpoints[e] = (a, b); rot[v] = CCW list of half-edges with origin v
    endpoints: dict[int, tuple[int, int]]
    rot: dict[int, list[HalfEdge]]

    @classmethod
    def empty(cls) -> "RotationMultigraph":
        return cls(endpoints={}, rot={})

    def copy(self) -> "RotationMultigraph":
        return RotationMultigraph(
            endpoints=dict(self.endpoints),
            rot={v: list(h) for v, h in self.rot.items()},
        )

    # -- structure -----------------------------------------------------

    def add_vertex(self, v: int) -> None:
        if v in self.rot:
            raise ValueError(f"vertex {v} already present")
        self.rot[v] = []

    def origin(self, h: HalfEdge) -> int:
        e, side = h
        return self.endpoints[e][side]

    def head(self, h: HalfEdge) -> int:
        e, side = h
        return self.endpoints[e][1 - side]

    @staticmethod
    def twin(h: HalfEdge) -> HalfEdge:
        return (h[0], 1 - h[1])

    def is_loop(self, e: int) -> bool:
        a, b = self.endpoints[e]
        return a == b

    def edge_ids(self) -> list[int]:
        return list(self.endpoints)

    def vertices(self) -> list[int]:
        return list(self.rot)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def other_end(self, e: int, v: int) -> int:
        a, b = self.endpoints[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} not an endpoint of edge {e}")

    def neighbors(self, v: int) -> list[int]:
        return [self.head(h) for h in self.rot[v]]

    def incident_edges(self, v: int) -> list[int]:
        return [h[0] for h in self.rot[v]]

    # -- rotation bookkeeping -------------------------------------------

    def rot_next(self, h: HalfEdge) -> HalfEdge:
        ring = self.rot[self.origin(h)]
        i = ring.index(h)
        return ring[(i + 1) % len(ring)]

    def rot_prev(self, h: HalfEdge) -> HalfEdge:
        ring = self.rot[self.origin(h)]
        i = ring.index(h)
        return ring[(i - 1) % len(ring)]

    def next_in_face(self, h: HalfEdge) -> HalfEdge:
        return self.rot_prev(self.twin(h))

    def faces(self) -> list[list[HalfEdge]]:
        """Orbit decomposition; each face is left of all its darts."""
        faces: list[list[HalfEdge]] = []
        seen: set[HalfEdge] = set()
        for v in self.rot:
            for h in self.rot[v]:
                if h in seen:
                    continue
                orbit = []
                cur = h
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    cur = self.next_in_face(cur)
                faces.append(orbit)
        return faces

    def check_euler(self) -> bool:
        """V - E + F == 2 for each connected component would be overkill;
        valid single-component embeddings must satisfy it globally."""
        if not self.rot:
            return True
        return len(self.rot) - len(self.endpoints) + len(self.faces()) == 2

    # -- mutations -------------------------------------------------------

    def add_edge_at(
        self,
        e: int,
        a: int,
        b: int,
        pos_a: int | None = None,
        pos_b: int | None = None,
    ) -> None:
        """Insert edge e between a and b; each end goes before index pos_*
        of that vertex's rotation (append when None)."""
        if e in self.endpoints:
            raise ValueError(f"edge {e} already present")
        self.endpoints[e] = (a, b)
        ra = self.rot[a]
        ra.insert(len(ra) if pos_a is None else pos_a, (e, 0))
        rb = self.rot[b]
        rb.insert(len(rb) if pos_b is None else pos_b, (e, 1))

    def delete_edge(self, e: int) -> None:
        a, b = self.endpoints.pop(e)
        self.rot[a].remove((e, 0))
        self.rot[b].remove((e, 1))

    def delete_vertex(self, v: int) -> None:
        for e in list(self.incident_edges(v)):
            if e in self.endpoints:
                self.delete_edge(e)
        del self.rot[v]

    def contract_edge(self, e: int) -> int:
        """Contract non-loop edge e, keeping endpoint `a`; returns it.

        The rotation at the merged vertex splices b's ring into a's at the
        position of the contracted edge, which preserves the embedding.
        """
        a, b = self.endpoints[e]
        if a == b:
            raise ValueError("cannot contract a loop")
        ra, rb = self.rot[a], self.rot[b]
        ia, ib = ra.index((e, 0)), rb.index((e, 1))
        spliced = ra[:ia] + rb[ib + 1 :] + rb[:ib] + ra[ia + 1 :]
        del self.endpoints[e]
        self.rot[a] = spliced
        del self.rot[b]
        for eid, (x, y) in list(self.endpoints.items()):
            if x == b or y == b:
                self.endpoints[eid] = (a if x == b else x, a if y == b else y)
        return a
