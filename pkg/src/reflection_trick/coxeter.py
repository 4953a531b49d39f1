"""Right-angled Coxeter groups W(T) of a nerve.

Generators are the vertices of the nerve, each an involution, and two
generators commute exactly when they span an edge.  Words are stored as
tuples of generator indices; the canonical normal form of an element is the
lexicographically least reduced word representing it (least in index
order), which makes equality of elements a tuple comparison.

Reduction is the usual pile scan for partially commutative groups: a new
letter walks left past letters it commutes with and cancels against the
first copy of itself it meets; a non-commuting letter stops it.
"""
from __future__ import annotations

import csv
import heapq
import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .complex_core.flag import graph_empty_squares
from .complex_core.simplicial import SimplicialComplex, cliques
from .errors import GuardExceeded, WordError

DEFAULT_MAX_ELEMENTS = 200_000


@dataclass(frozen=True)
class NerveGraph:
    """Generators plus the commuting pairs (edges of the nerve's 1-skeleton)."""

    generators: tuple
    edges: frozenset  # of index pairs (i, j) with i < j
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise WordError("duplicate generator labels")
        for e in self.edges:
            i, j = e
            if not (0 <= i < j < n):
                raise WordError(f"bad commuting pair {e!r}")
        object.__setattr__(self, "_hash", hash((self.generators, self.edges)))

    def __hash__(self):
        return self._hash

    @classmethod
    def from_labels(cls, generators: Sequence[Hashable], pairs: Iterable[tuple]) -> "NerveGraph":
        generators = tuple(generators)
        index = {g: i for i, g in enumerate(generators)}
        edges = set()
        for a, b in pairs:
            if a not in index or b not in index:
                raise WordError(f"commuting pair ({a!r}, {b!r}) uses an undeclared generator")
            if a == b:
                raise WordError(f"generator {a!r} cannot commute with itself as an edge")
            i, j = sorted((index[a], index[b]))
            edges.add((i, j))
        return cls(generators, frozenset(edges))

    @classmethod
    def from_complex(cls, K: SimplicialComplex) -> "NerveGraph":
        return cls(tuple(K.vertices), frozenset(K.edges))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in self.generators]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def _index(self) -> dict:
        return {g: i for i, g in enumerate(self.generators)}

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise WordError(f"unknown generator {label!r}") from None

    def commute(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def clique_complex_counts(self) -> list:
        """Number of cliques of each size (size 0 included)."""
        K = SimplicialComplex.from_index_facets(
            self.generators, [list(e) for e in self.edges] + [[i] for i in range(self.rank)])
        counts: list = []
        for c in cliques(K):
            while len(counts) <= len(c):
                counts.append(0)
            counts[len(c)] += 1
        return counts

    def __repr__(self) -> str:
        return f"NerveGraph(rank={self.rank}, edges={len(self.edges)})"


# -- words ----------------------------------------------------------------

def _reduce_indices(G: NerveGraph, letters: Iterable[int]) -> list:
    adj = G.adjacency
    out: list = []
    for x in letters:
        i = len(out) - 1
        while i >= 0:
            y = out[i]
            if y == x:
                del out[i]
                break
            if y not in adj[x]:
                i = -1
                break
            i -= 1
        else:
            i = -1
        if i == -1:
            out.append(x)
    return out


def _canonical(G: NerveGraph, reduced: Sequence[int]) -> tuple:
    """Lexicographically least word among the commutation class of a
    reduced word: repeatedly take the least letter that can move to the front."""
    adj = G.adjacency
    n = len(reduced)
    blockers = [0] * n
    after: list = [[] for _ in range(n)]
    for j in range(n):
        x = reduced[j]
        for i in range(j):
            if reduced[i] not in adj[x]:
                blockers[j] += 1
                after[i].append(j)
    ready = [(reduced[j], j) for j in range(n) if blockers[j] == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        x, j = heapq.heappop(ready)
        out.append(x)
        for k in after[j]:
            blockers[k] -= 1
            if blockers[k] == 0:
                heapq.heappush(ready, (reduced[k], k))
    return tuple(out)


@dataclass(frozen=True)
class ReducedWord:
    """An element of W in canonical normal form (tuple of generator indices)."""

    nerve: NerveGraph
    letters: tuple

    @property
    def length(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def labels(self) -> list:
        return [self.nerve.generators[i] for i in self.letters]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.labels())

    def __repr__(self) -> str:
        return f"ReducedWord({str(self) or 'e'!r})"

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return multiply(self, other)

    def inverse(self) -> "ReducedWord":
        return _from_indices(self.nerve, reversed(self.letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @cached_property
    def descents(self) -> frozenset:
        """Indices v with l(wv) < l(w): letters whose last occurrence commutes
        with everything after it."""
        adj = self.nerve.adjacency
        out = set()
        seen_after: list = []
        for x in reversed(self.letters):
            if x not in out and all(y in adj[x] for y in seen_after):
                out.add(x)
            seen_after.append(x)
        return frozenset(out)


def _from_indices(G: NerveGraph, letters: Iterable[int]) -> ReducedWord:
    return ReducedWord(G, _canonical(G, _reduce_indices(G, letters)))


def identity(G: NerveGraph) -> ReducedWord:
    return ReducedWord(G, ())


def generator(G: NerveGraph, label) -> ReducedWord:
    return ReducedWord(G, (G.index(label),))


def reduce(word, G: NerveGraph) -> ReducedWord:
    """Normal form of a word given as generator labels.

    A string is split on whitespace; anything else is iterated.
    """
    if isinstance(word, str):
        word = word.split()
    return _from_indices(G, [G.index(x) for x in word])


def multiply(a: ReducedWord, b: ReducedWord) -> ReducedWord:
    if a.nerve != b.nerve:
        raise WordError("cannot multiply words over different nerves")
    return _from_indices(a.nerve, a.letters + b.letters)


def length(w: ReducedWord) -> int:
    return w.length


def descent_set(w: ReducedWord) -> frozenset:
    """Right descent set In(w) as generator labels."""
    return frozenset(w.nerve.generators[i] for i in w.descents)


def coset_minimal(w: ReducedWord, subset: Iterable[int]) -> ReducedWord:
    """Shortest element of the coset w W_S for a set S of pairwise commuting
    generators: strip descents that lie in S."""
    S = set(subset)
    while True:
        strip = w.descents & S
        if not strip:
            return w
        w = _from_indices(w.nerve, w.letters + tuple(sorted(strip)))


# -- balls and growth -------------------------------------------------------

def enumerate_ball(G: NerveGraph, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list:
    """All elements of length <= radius, sorted by (length, normal form).

    The identity comes first.  Raises :class:`GuardExceeded` as soon as the
    ball is known to hold more than ``max_elements`` elements.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    sphere = [identity(G)]
    ball = list(sphere)
    for _ in range(radius):
        nxt = {}
        for w in sphere:
            for v in range(G.rank):
                if v in w.descents:
                    continue
                u = _from_indices(G, w.letters + (v,))
                nxt[u.letters] = u
        if len(ball) + len(nxt) > max_elements:
            raise GuardExceeded("ball element", max_elements, len(ball) + len(nxt))
        sphere = [nxt[k] for k in sorted(nxt)]
        if not sphere:
            break  # finite group exhausted
        ball.extend(sphere)
    return ball


def sphere_sizes(ball: Sequence[ReducedWord]) -> list:
    sizes: list = []
    for w in ball:
        while len(sizes) <= w.length:
            sizes.append(0)
        sizes[w.length] += 1
    return sizes


def growth_series(G: NerveGraph, terms: int) -> list:
    """First ``terms`` coefficients of the growth series of W.

    Uses W(t) = 1 / f(-t/(1+t)) with f the clique polynomial; clearing
    denominators with (1+t)^d, d the clique number, keeps everything integral.
    """
    counts = G.clique_complex_counts()
    d = len(counts) - 1
    num = _binomial_row(d)
    den = [0] * (d + 1)
    for k, c in enumerate(counts):
        row = _binomial_row(d - k)
        for i, b in enumerate(row):
            den[k + i] += c * (-1) ** k * b
    out = []
    for n in range(terms):
        acc = num[n] if n < len(num) else 0
        for i in range(1, min(n, d) + 1):
            acc -= den[i] * out[n - i]
        out.append(acc)  # den[0] == 1
    return out


def _binomial_row(n: int) -> list:
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def ball_csv(ball: Sequence[ReducedWord]) -> str:
    """Ball dump: one row per element, in chamber order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "length", "normal_form"])
    for i, w in enumerate(ball, start=1):
        writer.writerow([i, w.length, str(w)])
    return buf.getvalue()


# -- hyperbolicity ------------------------------------------------------------

def _as_nerve(G) -> NerveGraph:
    return NerveGraph.from_complex(G) if isinstance(G, SimplicialComplex) else G


def is_hyperbolic(G) -> bool:
    """True iff the nerve has no empty square (flagness is automatic for
    the clique complex of a graph)."""
    return not graph_empty_squares(_as_nerve(G).adjacency)


def contains_Z2(G) -> bool:
    return not is_hyperbolic(G)


def z2_witness(G):
    """For the first empty square a-b-c-d, the commuting pair (ac, bd).

    Both are of infinite order (a, c and b, d generate infinite dihedral
    groups) and every letter of one commutes with every letter of the other.
    Returns None for a hyperbolic nerve.
    """
    G = _as_nerve(G)
    squares = graph_empty_squares(G.adjacency)
    if not squares:
        return None
    a, b, c, d = squares[0]
    return (_from_indices(G, (a, c)), _from_indices(G, (b, d)))


# -- commutator subgroup ------------------------------------------------------

def abelianization_vector(w: ReducedWord) -> tuple:
    """Parity of each generator's letter count: the image in (Z/2)^V."""
    vec = [0] * w.nerve.rank
    for x in w.letters:
        vec[x] ^= 1
    return tuple(vec)


def in_commutator_subgroup(w: ReducedWord) -> bool:
    return not any(abelianization_vector(w))


def commutator_index(G: NerveGraph) -> int:
    return 2 ** G.rank


def torsion_scan(G: NerveGraph, radius: int, subgroup: str = "commutator",
                 max_elements: int = DEFAULT_MAX_ELEMENTS) -> list:
    """Nontrivial involutions in the radius ball of W0 (or of W).

    Torsion in a right-angled Coxeter group is conjugate into a finite
    special subgroup, so it all has order two; an empty result certifies
    the ball, not the whole subgroup.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if subgroup not in ("commutator", "full"):
        raise ValueError(f"unknown subgroup {subgroup!r}")
    found = []
    for w in enumerate_ball(G, radius, max_elements):
        if w.is_identity:
            continue
        if subgroup == "commutator" and not in_commutator_subgroup(w):
            continue
        if multiply(w, w).is_identity:
            found.append(w)
    return found
