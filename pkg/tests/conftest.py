from __future__ import annotations

import pytest

from edgeinsert.embedding import EmbeddedGraph


def c4() -> tuple[EmbeddedGraph, int, int]:
    """4-cycle 0-1-2-3 with terminals on opposite corners."""
    g = EmbeddedGraph(rotations=((1, 3), (2, 0), (3, 1), (0, 2)))
    return g, 0, 2


def k4() -> EmbeddedGraph:
    """K4 embedded with vertex 3 inside triangle 0-1-2.

    Coordinates behind the rotations: 0=(0,0), 1=(4,0), 2=(2,3), 3=(2,1).
    """
    return EmbeddedGraph(
        rotations=(
            (1, 3, 2),
            (2, 3, 0),
            (0, 3, 1),
            (0, 1, 2),
        )
    )


def p3() -> EmbeddedGraph:
    """Path 0-1-2: two bridges, a single face."""
    return EmbeddedGraph(rotations=((1,), (0, 2), (1,)))


def two_triangles() -> tuple[EmbeddedGraph, int, int]:
    """K4 minus an edge: triangles 0-1-2 and 1-2-3 sharing edge 1-2.

    Terminals 0 and 3 are the non-adjacent pair.  Coordinates: 0=(-1,0),
    1=(0,1), 2=(0,-1), 3=(1,0).
    """
    g = EmbeddedGraph(
        rotations=(
            (2, 1),
            (0, 2, 3),
            (3, 1, 0),
            (1, 2),
        )
    )
    return g, 0, 3


def wheel_i2() -> tuple[EmbeddedGraph, int, int]:
    """Triangle 0-1-2 with s=3 inside joined to all three and t=4 outside
    joined only to vertex 0.

    Coordinates: 0=(0,2), 1=(-2,-1), 2=(2,-1), 3=(0,0), 4=(0,4).
    """
    g = EmbeddedGraph(
        rotations=(
            (4, 1, 3, 2),
            (0, 2, 3),
            (0, 3, 1),
            (0, 1, 2),
            (0,),
        )
    )
    return g, 3, 4


@pytest.fixture
def c4_instance():
    return c4()


@pytest.fixture
def k4_graph():
    return k4()


@pytest.fixture
def wheel_instance():
    return wheel_i2()
