"""Planar graphs with a fixed combinatorial embedding (rotation system).

A graph is given by one counterclockwise cyclic order of neighbours per
vertex.  Faces are the orbits of the next-dart permutation: after walking
the dart u->v, the walk continues with (v, w) where w precedes u in the
CCW rotation at v (one step clockwise from the reversed dart).  Traced
this way, every face lies to the LEFT of each of its darts.  All modules
downstream rely on that convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "EmbeddingError",
    "InputFormatError",
    "EmbeddedGraph",
    "Face",
    "DualGraph",
    "ValidationReport",
    "validate_embedding",
    "extract_faces",
    "build_dual",
    "max_degree",
    "parse_instance",
    "format_instance",
]


class EmbeddingError(ValueError):
    """Structurally broken rotation system (e.g. a dangling dart)."""


class InputFormatError(ValueError):
    """Malformed instance file; carries a 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class EmbeddedGraph:
    """Connected simple planar graph with CCW rotations per vertex."""

    rotations: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        seen = []
        for u, rot in enumerate(self.rotations):
            for v in rot:
                if u < v:
                    seen.append((u, v))
        return tuple(seen)

    @property
    def edge_count(self) -> int:
        return sum(len(rot) for rot in self.rotations) // 2

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rotations[u]

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        """Dart following u->v along the face to its left."""
        rot = self.rotations[v]
        try:
            i = rot.index(u)
        except ValueError:
            raise EmbeddingError(f"dangling dart {u}->{v}: {u} not in rotation of {v}") from None
        return (v, rot[(i - 1) % len(rot)])


@dataclass(frozen=True)
class Face:
    """One face: the cyclic dart sequence with the face on the left."""

    id: int
    boundary: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.boundary)


@dataclass(frozen=True)
class DualGraph:
    """One vertex per face, one edge per primal edge.

    Edge i crosses primal edge ``crossed_primal[i]`` stored as the dart
    (u, v); its endpoints are ``left_face[i]`` = face left of u->v and
    ``right_face[i]`` = face left of v->u.  Bridges yield loops.
    """

    face_count: int
    left_face: tuple[int, ...]
    right_face: tuple[int, ...]
    crossed_primal: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.crossed_primal)


@dataclass
class ValidationReport:
    checks: dict[str, bool] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, message: str = "") -> None:
        self.checks[name] = passed
        if message and not passed:
            self.messages.append(message)


# ---------------------------------------------------------------------------
# Core operations
# ---------------------------------------------------------------------------


def validate_embedding(g: EmbeddedGraph) -> ValidationReport:
    """Check simplicity, dart pairing, connectivity and the Euler formula.

    Raises EmbeddingError for references that make face tracing impossible
    (out-of-range ids, dangling darts); anything else is reported.
    """
    report = ValidationReport()
    n = g.vertex_count
    if n == 0:
        raise EmbeddingError("graph has no vertices")

    for u, rot in enumerate(g.rotations):
        for v in rot:
            if not 0 <= v < n:
                raise EmbeddingError(f"dangling dart {u}->{v}: vertex {v} out of range")
            if u not in g.rotations[v]:
                raise EmbeddingError(f"dangling dart {u}->{v}: {u} not in rotation of {v}")

    simple = True
    for u, rot in enumerate(g.rotations):
        if u in rot:
            simple = False
            report.record("simple", False, f"loop at vertex {u}")
            break
        if len(set(rot)) != len(rot):
            simple = False
            report.record("simple", False, f"repeated neighbour in rotation of {u}")
            break
    if simple:
        report.record("simple", True)

    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in g.rotations[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    report.record("connected", len(seen) == n, f"reached {len(seen)} of {n} vertices")

    if simple and len(seen) == n:
        f = len(extract_faces(g))
        euler_ok = n - g.edge_count + f == 2
        report.record("euler", euler_ok, f"V-E+F = {n}-{g.edge_count}+{f} != 2")
    else:
        report.record("euler", False, "not checked: graph not simple/connected")
    return report


def extract_faces(g: EmbeddedGraph) -> list[Face]:
    """Decompose all darts into face orbits (face kept on the left)."""
    faces: list[Face] = []
    visited: set[tuple[int, int]] = set()
    for u in range(g.vertex_count):
        for v in g.rotations[u]:
            if (u, v) in visited:
                continue
            boundary = []
            dart = (u, v)
            while dart not in visited:
                visited.add(dart)
                boundary.append(dart)
                dart = g.next_dart(*dart)
            faces.append(Face(id=len(faces), boundary=tuple(boundary)))
    return faces


def build_dual(g: EmbeddedGraph) -> DualGraph:
    """Dual graph of the embedding; may contain multi-edges and loops."""
    faces = extract_faces(g)
    face_of: dict[tuple[int, int], int] = {}
    for f in faces:
        for dart in f.boundary:
            face_of[dart] = f.id
    left, right, crossed = [], [], []
    for u, v in g.edges:
        left.append(face_of[(u, v)])
        right.append(face_of[(v, u)])
        crossed.append((u, v))
    return DualGraph(
        face_count=len(faces),
        left_face=tuple(left),
        right_face=tuple(right),
        crossed_primal=tuple(crossed),
    )


def max_degree(g: EmbeddedGraph) -> int:
    return max(len(rot) for rot in g.rotations)


# ---------------------------------------------------------------------------
# Instance file format
# ---------------------------------------------------------------------------
#
# Line-oriented text: first line "n m", then n lines "v: u1 u2 ... uk" with
# vertex v's CCW rotation, final line "s t".  Blank lines and '#' comments
# are ignored.


def parse_instance(text: str) -> tuple[EmbeddedGraph, int, int]:
    lines: list[tuple[int, str]] = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((i, stripped))
    if not lines:
        raise InputFormatError(1, "empty instance")

    line_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise InputFormatError(line_no, "expected header 'n m'")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputFormatError(line_no, "header values must be integers") from None
    if n <= 0:
        raise InputFormatError(line_no, "vertex count must be positive")
    if len(lines) != n + 2:
        raise InputFormatError(line_no, f"expected {n} rotation lines plus terminals, got {len(lines) - 1}")

    rotations: list[tuple[int, ...] | None] = [None] * n
    for line_no, line in lines[1 : n + 1]:
        if ":" not in line:
            raise InputFormatError(line_no, "expected 'v: u1 u2 ...'")
        head, tail = line.split(":", 1)
        try:
            v = int(head)
            nbrs = tuple(int(tok) for tok in tail.split())
        except ValueError:
            raise InputFormatError(line_no, "vertex ids must be integers") from None
        if not 0 <= v < n:
            raise InputFormatError(line_no, f"vertex id {v} out of range")
        if rotations[v] is not None:
            raise InputFormatError(line_no, f"duplicate rotation for vertex {v}")
        rotations[v] = nbrs

    missing = [v for v, rot in enumerate(rotations) if rot is None]
    if missing:
        raise InputFormatError(lines[-1][0], f"missing rotation for vertex {missing[0]}")

    line_no, last = lines[n + 1]
    parts = last.split()
    if len(parts) != 2:
        raise InputFormatError(line_no, "expected terminal line 's t'")
    try:
        s, t = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputFormatError(line_no, "terminals must be integers") from None
    if not (0 <= s < n and 0 <= t < n):
        raise InputFormatError(line_no, "terminal out of range")

    g = EmbeddedGraph(rotations=tuple(r for r in rotations if r is not None))
    if g.edge_count != m:
        raise InputFormatError(lines[0][0], f"header says {m} edges, rotations give {g.edge_count}")
    return g, s, t


def format_instance(g: EmbeddedGraph, s: int, t: int) -> str:
    out = [f"{g.vertex_count} {g.edge_count}"]
    for v, rot in enumerate(g.rotations):
        out.append(f"{v}: " + " ".join(str(u) for u in rot))
    out.append(f"{s} {t}")
    return "\n".join(out) + "\n"
