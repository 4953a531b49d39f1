"""Barycentric subdivision and a best-effort flag-no-square subdivision.

``make_flag_no_square`` is a heuristic.  The existence of a flag-no-square
subdivision for complexes of dimension at most three is a theorem, but no
construction is provided with it, so the contract here is the checker: the
returned complex always passes :func:`is_flag_no_square`, and when the
strategy gives up it says so with :class:`SubdivisionFailed`.

Strategies by dimension:

* dimension <= 1: local rounds.  Every offending cycle (an empty square or
  a missing triangle) gets one of its edges subdivided; repeat.
* dimension 2: barycentric subdivision, then an ``m``-fold edgewise
  subdivision of every triangle, then one edge flip inside each small
  triangle next to an old edge midpoint.  Midpoints of old edges have degree
  4 after barycentric subdivision (their link is an empty square); the flips
  raise them to 6 while only pushing nearby grid vertices down to 5.  Flips
  happen strictly inside old faces, so the result is still a subdivision of
  the input.  Adjacent faces flip on opposite sides of a shared edge (see
  ``_flip_sides``).  Rounds vary the grid size and the face orientation.
* dimension 3: barycentric subdivision followed by local rounds.
"""
from __future__ import annotations

import random
from itertools import permutations

from ..errors import ComplexError, SubdivisionFailed
from .flag import graph_empty_squares, is_flag_no_square, non_flag_cliques
from .simplicial import SimplicialComplex


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision.

    Vertex ``i`` of the result is the barycenter of ``K.simplices()[i]``
    (ordered by dimension, then lexicographically) and is labelled by the
    tuple of that simplex's vertex labels.
    """
    simplices = K.simplices()
    index = {s: i for i, s in enumerate(simplices)}
    facets = []
    for facet in K.facets:
        for order in permutations(facet):
            facets.append([index[tuple(sorted(order[:k]))] for k in range(1, len(order) + 1)])
    return SimplicialComplex.from_index_facets([K.label(s) for s in simplices], facets)


def subdivide_edge(K: SimplicialComplex, a: int, b: int, label=None) -> SimplicialComplex:
    """Stellar subdivision of the edge ``{a, b}`` at a new last vertex."""
    if (min(a, b), max(a, b)) not in K.edges:
        raise ComplexError(f"no edge {{{a}, {b}}}")
    if label is None:
        label = _fresh(K, (K.vertices[a], K.vertices[b]))
    m = K.n_vertices
    facets = []
    for f in K.facets:
        if a in f and b in f:
            facets.append([x for x in f if x != a] + [m])
            facets.append([x for x in f if x != b] + [m])
        else:
            facets.append(list(f))
    return SimplicialComplex.from_index_facets(K.vertices + (label,), facets)


def _fresh(K: SimplicialComplex, base):
    label, n = base, 1
    while label in K._index:
        label = (base, n)
        n += 1
    return label


def _offending_edges(K: SimplicialComplex) -> list:
    edges = []
    for clique in non_flag_cliques(K):
        edges.append((clique[0], clique[1]))
    for a, b, _c, _d in graph_empty_squares(K.adjacency):
        edges.append((a, b))
    seen, out = set(), []
    for e in edges:
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def _subdivide_edges(K: SimplicialComplex, edges) -> SimplicialComplex:
    """Stellar subdivision of several edges in sequence, built once."""
    vertices = list(K.vertices)
    used = set(vertices)
    facets = [list(f) for f in K.facets]
    for a, b in edges:
        hit = [f for f in facets if a in f and b in f]
        if not hit:
            continue  # already broken by an earlier subdivision this round
        base = (vertices[a], vertices[b])
        label, n = base, 1
        while label in used:
            label, n = (base, n), n + 1
        used.add(label)
        m = len(vertices)
        vertices.append(label)
        rest = [f for f in facets if not (a in f and b in f)]
        for f in hit:
            rest.append([x for x in f if x != a] + [m])
            rest.append([x for x in f if x != b] + [m])
        facets = rest
    return SimplicialComplex.from_index_facets(vertices, facets)


def _local_rounds(K: SimplicialComplex, max_rounds: int, max_vertices: int) -> SimplicialComplex:
    for _ in range(max_rounds):
        if is_flag_no_square(K):
            return K
        K = _subdivide_edges(K, _offending_edges(K))
        if K.n_vertices > max_vertices:
            raise SubdivisionFailed(
                f"local subdivision grew past {max_vertices} vertices without reaching flag-no-square")
    if is_flag_no_square(K):
        return K
    raise SubdivisionFailed(f"local subdivision did not reach flag-no-square in {max_rounds} rounds")


# -- dimension two ------------------------------------------------------

def _orient_faces(K: SimplicialComplex, rng: random.Random | None):
    """Cyclic orientation (a, b, c) for every triangle of K.

    Propagated across edges shared by exactly two triangles; with ``rng``
    the seed face of each component and the order of propagation are
    randomized, which changes the outcome for non-orientable surfaces.
    """
    tris = list(K.simplices(2))
    on_edge: dict = {}
    for t in tris:
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            on_edge.setdefault(e, []).append(t)
    orient: dict = {}
    order = tris[:]
    if rng is not None:
        rng.shuffle(order)
    for start in order:
        if start in orient:
            continue
        first = start if rng is None or rng.random() < 0.5 else (start[0], start[2], start[1])
        orient[start] = first
        stack = [start]
        while stack:
            t = stack.pop()
            o = orient[t]
            for i in range(3):
                u, v = o[i], o[(i + 1) % 3]
                nbrs = on_edge[(min(u, v), max(u, v))]
                if len(nbrs) != 2:
                    continue
                for s in nbrs:
                    if s == t or s in orient:
                        continue
                    (w,) = [x for x in s if x not in (u, v)]
                    orient[s] = (v, u, w)  # traverse the shared edge backwards
                    stack.append(s)
    return orient


def _flip_sides(K: SimplicialComplex, orient: dict) -> dict:
    """Map (face, edge) -> old vertex on whose side the flip happens.

    An edge with two faces has a barycentric midpoint of degree 4; the two
    faces take opposite sides: the tail of the edge in each face's
    orientation when the orientations agree, and an arbitrary opposite pair
    along an orientation seam.  At an edge with three or more faces the
    midpoint's link contains squares through every pair of faces.  Two
    flips on the same side of one edge create a new square, so one face
    flips on each side and the rest stay put; that clears three pages but
    not four or more.  Boundary edges need nothing.
    """
    on_edge: dict = {}
    for t in K.simplices(2):
        for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            on_edge.setdefault(e, []).append(t)
    sides = {}
    for edge, faces in on_edge.items():
        if len(faces) < 2:
            continue
        if len(faces) > 2:
            sides[(faces[0], edge)] = edge[0]
            sides[(faces[1], edge)] = edge[1]
            continue
        tails = []
        for face in faces:
            o = orient[face]
            pos = {v: i for i, v in enumerate(o)}
            a, b = edge
            tails.append(a if (pos[a] + 1) % 3 == pos[b] else b)
        if tails[0] == tails[1]:
            tails[1] = edge[0] if tails[0] == edge[1] else edge[1]
        for face, tail in zip(faces, tails):
            sides[(face, edge)] = tail
    return sides


def _grid_flip_subdivision(K: SimplicialComplex, m: int, sides: dict) -> SimplicialComplex:
    S = barycentric_subdivision(K)
    simplex_of = K.simplices()
    sd_index = {s: i for i, s in enumerate(simplex_of)}

    def point(coeffs: dict):
        supp = tuple(sorted(v for v, c in coeffs.items() if c))
        return (supp, tuple(coeffs[v] for v in supp))

    triangles = set()
    segments = []
    for t in S.simplices(2):
        i, j, k = t
        for p in range(m):
            for q in range(m - p):
                a = point({i: m - p - q, j: p, k: q})
                b = point({i: m - p - q - 1, j: p + 1, k: q})
                c = point({i: m - p - q - 1, j: p, k: q + 1})
                triangles.add(frozenset((a, b, c)))
                if p + q <= m - 2:
                    d = point({i: m - p - q - 2, j: p + 1, k: q + 1})
                    triangles.add(frozenset((b, c, d)))
    in_triangle = {e for t in S.simplices(2) for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))}
    for i, j in S.simplices(1):
        if (i, j) in in_triangle:
            continue
        for p in range(m):
            segments.append((point({i: m - p, j: p}), point({i: m - p - 1, j: p + 1})))
    isolated = [((i,), (m,)) for (i,) in S.simplices(0)
                if not any(i in e for e in S.simplices(1))]

    for (face, edge), tail in sides.items():
        f = sd_index[face]
        e = sd_index[edge]
        t = sd_index[(tail,)]
        corner = point({e: m, t: 0, f: 0})
        p = point({e: m - 1, t: 1, f: 0})
        q = point({e: m - 1, t: 0, f: 1})
        r = point({e: m - 2, t: 1, f: 1})
        old = (frozenset((corner, p, q)), frozenset((p, q, r)))
        if not all(o in triangles for o in old):
            continue
        triangles.difference_update(old)
        triangles.add(frozenset((corner, p, r)))
        triangles.add(frozenset((corner, q, r)))

    points = sorted({v for t in triangles for v in t} | {v for s in segments for v in s}
                    | set(isolated))
    pidx = {v: n for n, v in enumerate(points)}

    def label(pt):
        supp, coeffs = pt
        if len(supp) == 1:
            return S.vertices[supp[0]]
        return (tuple(S.vertices[s] for s in supp), coeffs)

    facets = [[pidx[v] for v in t] for t in triangles]
    facets += [[pidx[a], pidx[b]] for a, b in segments]
    facets += [[pidx[v]] for v in isolated]
    return SimplicialComplex.from_index_facets([label(v) for v in points], facets)


def make_flag_no_square(K: SimplicialComplex, max_rounds: int = 8, seed: int = 0,
                        max_vertices: int = 1500) -> SimplicialComplex:
    """Subdivide ``K`` (dimension <= 3) until it is flag-no-square.

    Returns ``K`` itself when it already qualifies.  Raises
    :class:`SubdivisionFailed` once ``max_rounds`` attempts are used up or
    the local rounds grow past ``max_vertices``; that is a failure of this
    heuristic, not evidence against existence.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")
    if is_flag_no_square(K):
        return K
    if K.dimension > 3:
        raise ComplexError("flag-no-square subdivision is only attempted up to dimension 3")
    if K.dimension <= 1:
        return _local_rounds(K, max_rounds, max_vertices)
    if K.dimension == 3:
        return _local_rounds(barycentric_subdivision(K), max_rounds, max_vertices)
    rng = random.Random(seed)
    for attempt in range(max_rounds):
        m = 2 + attempt // 2
        orient = _orient_faces(K, None if attempt == 0 else rng)
        L = _grid_flip_subdivision(K, m, _flip_sides(K, orient))
        if is_flag_no_square(L):
            return L
    raise SubdivisionFailed(f"grid-and-flip subdivision failed in {max_rounds} rounds")
