"""Finite abstract simplicial complexes.

A complex is stored as its facet list over an ordered vertex list.  The
full simplex poset is materialized lazily; inputs in this toolkit are small
enough that clarity wins over compactness.

Simplices are tuples of vertex *indices* in increasing order.  Public
helpers that talk to users (``link``, ``cliques``, the JSON layer) speak
vertex labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from ..errors import ComplexError

Simplex = tuple  # increasing tuple of vertex indices


def faces_of(simplex: Simplex, include_empty: bool = False):
    """All nonempty faces of ``simplex`` (including itself)."""
    start = 0 if include_empty else 1
    for k in range(start, len(simplex) + 1):
        yield from combinations(simplex, k)


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet-list representation of a finite simplicial complex.

    Use :func:`validate_complex` (or :meth:`from_index_facets`) to build one;
    the constructor trusts its arguments.
    """

    vertices: tuple
    facets: tuple  # tuple of increasing index tuples, sorted

    @classmethod
    def from_index_facets(cls, vertices: Sequence[Hashable], facets: Iterable[Iterable[int]]):
        vertices = tuple(vertices)
        n = len(vertices)
        if n == 0:
            raise ComplexError("empty complex")
        if len(set(vertices)) != n:
            raise ComplexError("duplicate vertex labels")
        cleaned = set()
        for facet in facets:
            facet = tuple(sorted(set(facet)))
            if not facet:
                raise ComplexError("empty facet")
            for i in facet:
                if not isinstance(i, int) or not 0 <= i < n:
                    raise ComplexError(f"facet index {i!r} out of range")
            cleaned.add(facet)
        # absorb non-maximal faces; larger facets first
        maximal: list[tuple] = []
        covered: set = set()
        for facet in sorted(cleaned, key=lambda f: (-len(f), f)):
            if facet in covered:
                continue
            maximal.append(facet)
            for k in range(1, len(facet)):
                covered.update(combinations(facet, k))
        used = {i for f in maximal for i in f}
        # a declared vertex outside every facet is an isolated point
        maximal.extend((i,) for i in range(n) if i not in used)
        return cls(vertices, tuple(sorted(maximal)))

    # -- basic structure -------------------------------------------------

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ComplexError(f"unknown vertex {label!r}") from None

    def label(self, simplex: Simplex) -> tuple:
        return tuple(self.vertices[i] for i in simplex)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def simplex_set(self) -> frozenset:
        out = set()
        for f in self.facets:
            out.update(faces_of(f))
        return frozenset(out)

    @cached_property
    def simplices_by_dim(self) -> tuple:
        buckets = [[] for _ in range(self.dimension + 1)]
        for s in self.simplex_set:
            buckets[len(s) - 1].append(s)
        return tuple(tuple(sorted(b)) for b in buckets)

    def simplices(self, k: int | None = None):
        if k is None:
            return [s for b in self.simplices_by_dim for s in b]
        if k < 0 or k > self.dimension:
            return ()
        return self.simplices_by_dim[k]

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(simplex)) in self.simplex_set

    @cached_property
    def f_vector(self) -> tuple:
        return tuple(len(b) for b in self.simplices_by_dim)

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(self.simplices(1))

    @cached_property
    def adjacency(self) -> tuple:
        """Neighbour sets of the 1-skeleton, indexed by vertex."""
        adj = [set() for _ in self.vertices]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(frozenset(s) for s in adj)

    def facet_labels(self) -> list:
        return [list(self.label(f)) for f in self.facets]

    def __repr__(self) -> str:
        return f"SimplicialComplex(n_vertices={self.n_vertices}, f_vector={self.f_vector})"


def validate_complex(vertices: Sequence[Hashable], facets: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
    """Build a normalized complex from a vertex list and label facets.

    Facets are deduplicated, faces of other facets are absorbed, and the
    input vertex order is preserved.
    """
    vertices = list(vertices)
    if not vertices:
        raise ComplexError("empty complex")
    index = {v: i for i, v in enumerate(vertices)}
    facets = list(facets)
    if not facets:
        raise ComplexError("empty complex: no facets")
    idx_facets = []
    for facet in facets:
        facet = list(facet)
        if not facet:
            raise ComplexError("empty facet")
        try:
            idx_facets.append([index[v] for v in facet])
        except KeyError as exc:
            raise ComplexError(f"facet {facet!r} uses undeclared vertex {exc.args[0]!r}") from None
    return SimplicialComplex.from_index_facets(vertices, idx_facets)


@dataclass(frozen=True)
class Subcomplex:
    """A downward-closed set of simplices of a parent complex."""

    parent: SimplicialComplex
    simplex_set: frozenset

    def __post_init__(self):
        for s in self.simplex_set:
            if s not in self.parent.simplex_set:
                raise ComplexError(f"simplex {s} not in parent complex")
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    if face not in self.simplex_set:
                        raise ComplexError(f"subcomplex not closed: face {face} of {s} missing")

    @classmethod
    def closure(cls, parent: SimplicialComplex, simplices: Iterable[Simplex]):
        """Smallest subcomplex containing ``simplices``."""
        out = set()
        for s in simplices:
            out.update(faces_of(tuple(sorted(s))))
        return cls(parent, frozenset(out))

    @property
    def is_empty(self) -> bool:
        return not self.simplex_set

    @cached_property
    def dimension(self) -> int:
        return max((len(s) for s in self.simplex_set), default=0) - 1

    def simplices(self, k: int | None = None):
        if k is None:
            return sorted(self.simplex_set, key=lambda s: (len(s), s))
        return sorted(s for s in self.simplex_set if len(s) == k + 1)

    def union(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplex_set | other.simplex_set)

    def intersection(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(self.parent, self.simplex_set & other.simplex_set)

    def frontier(self) -> "Subcomplex":
        """Topological frontier inside the parent: simplices of this
        subcomplex that are faces of some parent simplex outside it."""
        front = set()
        for s in self.parent.simplex_set:
            if s in self.simplex_set:
                continue
            for face in faces_of(s):
                if face in self.simplex_set:
                    front.add(face)
        return Subcomplex(self.parent, frozenset(front))

    def as_complex(self) -> SimplicialComplex:
        """Standalone complex on the vertices actually used."""
        if self.is_empty:
            raise ComplexError("empty subcomplex")
        used = sorted({i for s in self.simplex_set for i in s})
        remap = {old: new for new, old in enumerate(used)}
        verts = [self.parent.vertices[i] for i in used]
        return SimplicialComplex.from_index_facets(
            verts, ([remap[i] for i in s] for s in self.simplex_set))


def link(K: SimplicialComplex, v) -> SimplicialComplex | None:
    """Simplicial link of the vertex labelled ``v``.

    Returns ``None`` for an isolated vertex, whose link is empty.
    """
    i = K.index(v)
    faces = [tuple(j for j in f if j != i) for f in K.facets if i in f]
    faces = [f for f in faces if f]
    if not faces:
        return None
    used = sorted({j for f in faces for j in f})
    remap = {old: new for new, old in enumerate(used)}
    return SimplicialComplex.from_index_facets(
        [K.vertices[j] for j in used], ([remap[j] for j in f] for f in faces))


def cliques(K: SimplicialComplex) -> list:
    """All cliques of the 1-skeleton (the empty set included), as label tuples.

    For a flag complex these are exactly the simplices plus the empty set;
    they index the finite special subgroups of the associated right-angled
    Coxeter group.
    """
    adj = K.adjacency
    found = [()]

    def extend(clique, candidates):
        for pos, v in enumerate(candidates):
            new = clique + (v,)
            found.append(new)
            extend(new, [w for w in candidates[pos + 1:] if w in adj[v]])

    extend((), list(range(K.n_vertices)))
    found.sort(key=lambda c: (len(c), c))
    return [K.label(c) for c in found]


def cone(K: SimplicialComplex, apex="*") -> SimplicialComplex:
    """Cone over ``K`` with a new last vertex ``apex``."""
    if apex in K._index:
        raise ComplexError(f"apex label {apex!r} already used")
    n = K.n_vertices
    return SimplicialComplex.from_index_facets(
        K.vertices + (apex,), (f + (n,) for f in K.facets))


def connected_components(n_vertices: int, edges: Iterable[tuple]) -> list:
    """Vertex sets of the connected components of a graph (sorted)."""
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    comps: dict = {}
    for v in range(n_vertices):
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())
