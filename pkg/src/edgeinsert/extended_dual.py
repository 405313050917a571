"""The extended dual: dual graph plus the two terminal vertices.

Terminals attach to one dual vertex per *corner*: each dart (s, u) in the
rotation at s contributes one attachment edge into the face left of that
dart.  The extended dual carries its own embedding: the cyclic order of
edge ends around a face vertex is the face's boundary order (attachment
ends sit at their corner position), and around a terminal it is the
terminal's primal rotation.  This embedding is what makes the non-crossing
predicate and the shortest-path normalization well-defined.

Dual edges record the primal dart (u, v) whose left face is their `a`
end.  Traversing such an edge from `a` to `b` crosses the primal edge
putting v on the left and u on the right of the traversal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .embedding import EmbeddedGraph, Face, build_dual, extract_faces
from .rotsys import RotationMultigraph

__all__ = ["DualEdge", "ExtendedDual", "DualPath", "build_extended_dual", "crossings_of_path"]

CROSSING = "crossing"
ATTACHMENT = "attachment"


@dataclass(frozen=True)
class DualEdge:
    id: int
    a: int
    b: int
    kind: str
    # crossing: primal dart (u, v) with a = face left of u->v
    primal: tuple[int, int] | None
    # attachment: corner dart (terminal, neighbour); a = face, b = terminal
    corner: tuple[int, int] | None

    def is_loop(self) -> bool:
        return self.a == self.b

    def other(self, v: int) -> int:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise ValueError(f"vertex {v} not on dual edge {self.id}")


@dataclass(frozen=True)
class ExtendedDual:
    graph: EmbeddedGraph
    s: int
    t: int
    faces: tuple[Face, ...]
    edges: tuple[DualEdge, ...]
    rsys: RotationMultigraph  # embedding of the extended dual itself

    @property
    def terminal_s(self) -> int:
        return len(self.faces)

    @property
    def terminal_t(self) -> int:
        return len(self.faces) + 1

    @property
    def vertex_count(self) -> int:
        return len(self.faces) + 2

    def incident(self, v: int) -> list[DualEdge]:
        return [self.edges[e] for e in self.rsys.incident_edges(v)]

    def dual_edge_of_primal(self, u: int, v: int) -> DualEdge:
        e = self._primal_index.get((u, v))
        if e is None:
            e = self._primal_index.get((v, u))
        if e is None:
            raise KeyError(f"no dual edge crosses primal edge {{{u},{v}}}")
        return self.edges[e]

    @property
    def _primal_index(self) -> dict[tuple[int, int], int]:
        cached = self.__dict__.get("_primal_index_cache")
        if cached is None:
            cached = {e.primal: e.id for e in self.edges if e.primal is not None}
            self.__dict__["_primal_index_cache"] = cached
        return cached

    def to_dot(self) -> str:
        lines = ["graph extended_dual {"]
        for f in self.faces:
            lines.append(f'  f{f.id} [label="f{f.id}"];')
        lines.append(f'  s [label="s({self.s})", shape=box];')
        lines.append(f'  t [label="t({self.t})", shape=box];')

        def name(v: int) -> str:
            if v == self.terminal_s:
                return "s"
            if v == self.terminal_t:
                return "t"
            return f"f{v}"

        for e in self.edges:
            if e.kind == CROSSING:
                u, v = e.primal  # type: ignore[misc]
                lines.append(f'  {name(e.a)} -- {name(e.b)} [label="{u}-{v}"];')
            else:
                lines.append(f"  {name(e.a)} -- {name(e.b)} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DualPath:
    """Simple st-path in the extended dual; interior edges are crossings."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_ids)

    def crossed_edges(self, ed: ExtendedDual) -> list[tuple[int, int]]:
        out = []
        for e in self.edge_ids[1:-1]:
            primal = ed.edges[e].primal
            assert primal is not None
            out.append(primal)
        return out

    def validate(self, ed: ExtendedDual) -> None:
        if len(self.vertices) != len(self.edge_ids) + 1:
            raise ValueError("vertex/edge sequence length mismatch")
        if len(self.edge_ids) < 2:
            raise ValueError("st-path needs at least two edges")
        if self.vertices[0] != ed.terminal_s or self.vertices[-1] != ed.terminal_t:
            raise ValueError("path must run from terminal s to terminal t")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path is not simple")
        for i, e in enumerate(self.edge_ids):
            edge = ed.edges[e]
            if edge.is_loop():
                raise ValueError("path uses a loop edge")
            if {edge.a, edge.b} != {self.vertices[i], self.vertices[i + 1]}:
                raise ValueError(f"edge {e} does not join step {i}")
            want = ATTACHMENT if i in (0, len(self.edge_ids) - 1) else CROSSING
            if edge.kind != want:
                raise ValueError(f"edge {e} at step {i} should be {want}")

    def to_json(self, ed: ExtendedDual) -> str:
        return json.dumps(
            {
                "faces": list(self.vertices[1:-1]),
                "crossed_edges": [list(p) for p in self.crossed_edges(ed)],
            }
        )


def build_extended_dual(g: EmbeddedGraph, s: int, t: int) -> ExtendedDual:
    if s == t:
        raise ValueError("terminals must be distinct")
    if g.has_edge(s, t):
        raise ValueError("edge already present between the terminals")

    faces = tuple(extract_faces(g))
    dual = build_dual(g)
    face_of: dict[tuple[int, int], int] = {}
    for f in faces:
        for dart in f.boundary:
            face_of[dart] = f.id

    term_id = {s: len(faces), t: len(faces) + 1}
    edges: list[DualEdge] = []
    crossing_of_primal: dict[tuple[int, int], int] = {}
    for i in range(dual.edge_count):
        dart = dual.crossed_primal[i]
        e = DualEdge(
            id=len(edges),
            a=dual.left_face[i],
            b=dual.right_face[i],
            kind=CROSSING,
            primal=dart,
            corner=None,
        )
        edges.append(e)
        crossing_of_primal[dart] = e.id

    attach_of_corner: dict[tuple[int, int], int] = {}
    for terminal in (s, t):
        for u in g.rotations[terminal]:
            corner = (terminal, u)
            e = DualEdge(
                id=len(edges),
                a=face_of[corner],
                b=term_id[terminal],
                kind=ATTACHMENT,
                primal=None,
                corner=corner,
            )
            edges.append(e)
            attach_of_corner[corner] = e.id

    def crossing_end(dart: tuple[int, int]) -> tuple[int, int]:
        u, v = dart
        e = crossing_of_primal.get((u, v))
        if e is not None:
            return (e, 0)  # this face is left of the stored dart
        e = crossing_of_primal.get((v, u))
        assert e is not None
        return (e, 1)

    rsys = RotationMultigraph.empty()
    for f in faces:
        rsys.add_vertex(f.id)
    rsys.add_vertex(term_id[s])
    rsys.add_vertex(term_id[t])

    for f in faces:
        ring = rsys.rot[f.id]
        for dart in f.boundary:
            if dart[0] in term_id:
                ring.append((attach_of_corner[dart], 0))
            ring.append(crossing_end(dart))
    for terminal in (s, t):
        ring = rsys.rot[term_id[terminal]]
        for u in g.rotations[terminal]:
            ring.append((attach_of_corner[(terminal, u)], 1))

    for e in edges:
        rsys.endpoints[e.id] = (e.a, e.b)

    ed = ExtendedDual(graph=g, s=s, t=t, faces=faces, edges=tuple(edges), rsys=rsys)
    assert ed.rsys.check_euler(), "extended dual embedding failed the Euler check"
    return ed


def crossings_of_path(ed: ExtendedDual, p: DualPath) -> tuple[int, list[tuple[int, int]]]:
    """Crossing count (= length - 2) and the ordered crossed primal edges."""
    p.validate(ed)
    crossed = p.crossed_edges(ed)
    assert len(crossed) == len(p) - 2
    return len(crossed), crossed
