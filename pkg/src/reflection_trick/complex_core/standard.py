"""Small named triangulations used throughout tests and the CLI."""
from __future__ import annotations

from itertools import product

from ..errors import ComplexError
from .simplicial import SimplicialComplex, validate_complex


def cycle(n: int) -> SimplicialComplex:
    """Boundary of an n-gon on vertices ``v0 .. v{n-1}``."""
    if n < 3:
        raise ComplexError("a cycle needs at least 3 vertices")
    verts = [f"v{i}" for i in range(n)]
    return validate_complex(verts, [[verts[i], verts[(i + 1) % n]] for i in range(n)])


def simplex(d: int) -> SimplicialComplex:
    verts = [f"v{i}" for i in range(d + 1)]
    return validate_complex(verts, [verts])


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex, a (d-1)-sphere."""
    verts = [f"v{i}" for i in range(d + 1)]
    return validate_complex(verts, [[v for v in verts if v != w] for w in verts])


def octahedron() -> SimplicialComplex:
    """Join of three 0-spheres."""
    verts = ["x+", "x-", "y+", "y-", "z+", "z-"]
    facets = [list(f) for f in product(("x+", "x-"), ("y+", "y-"), ("z+", "z-"))]
    return validate_complex(verts, facets)


def projective_plane6() -> SimplicialComplex:
    """Six-vertex real projective plane (hemi-icosahedron)."""
    facets = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
              (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    return validate_complex([str(i) for i in range(1, 7)],
                            [[str(i) for i in f] for f in facets])


def torus7() -> SimplicialComplex:
    """Seven-vertex (Moebius-Csaszar) torus."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return validate_complex([str(i) for i in range(7)], [[str(i) for i in f] for f in facets])


def icosahedron() -> SimplicialComplex:
    """Boundary of the icosahedron: a flag-no-square 2-sphere."""
    up = [1 + i for i in range(5)]
    lo = [6 + i for i in range(5)]
    facets = []
    for i in range(5):
        j = (i + 1) % 5
        facets += [(0, up[i], up[j]), (11, lo[i], lo[j]),
                   (up[i], up[j], lo[i]), (up[j], lo[i], lo[j])]
    return validate_complex([str(i) for i in range(12)], [[str(i) for i in f] for f in facets])


def single_edge() -> SimplicialComplex:
    return validate_complex(["a", "b"], [["a", "b"]])


def two_points() -> SimplicialComplex:
    return validate_complex(["a", "b"], [["a"], ["b"]])


def single_vertex() -> SimplicialComplex:
    return validate_complex(["a"], [["a"]])


BUILTIN = {
    "pentagon": lambda: cycle(5),
    "square": lambda: cycle(4),
    "hexagon": lambda: cycle(6),
    "triangle": lambda: cycle(3),
    "tetrahedron": lambda: simplex_boundary(3),
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "rp2": projective_plane6,
    "torus": torus7,
    "edge": single_edge,
    "two-points": two_points,
    "point": single_vertex,
}


def builtin(name: str) -> SimplicialComplex:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise ComplexError(f"unknown builtin complex {name!r}; choose from {sorted(BUILTIN)}") from None
