"""Flag and flag-no-square predicates."""
from __future__ import annotations

from itertools import combinations

import networkx as nx

from .simplicial import SimplicialComplex


def one_skeleton(K: SimplicialComplex) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(K.n_vertices))
    G.add_edges_from(K.edges)
    return G


def non_flag_cliques(K: SimplicialComplex) -> list:
    """Minimal cliques of the 1-skeleton that do not span a simplex.

    Minimal means every proper subset is a simplex, so each entry is a
    "missing face" of size at least 3.  Index tuples, sorted.
    """
    bad = set()
    for clique in nx.find_cliques(one_skeleton(K)):
        clique = tuple(sorted(clique))
        if clique in K.simplex_set:
            continue
        for k in range(3, len(clique) + 1):
            for sub in combinations(clique, k):
                if sub in K.simplex_set:
                    continue
                if all(f in K.simplex_set for f in combinations(sub, k - 1)):
                    bad.add(sub)
    return sorted(bad, key=lambda c: (len(c), c))


def is_flag(K: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton spans a simplex."""
    simplices = K.simplex_set
    return all(tuple(sorted(c)) in simplices for c in nx.find_cliques(one_skeleton(K)))


def graph_empty_squares(adjacency) -> list:
    """Induced 4-cycles of a graph given by neighbour sets.

    Each square is reported once as ``(a, b, c, d)`` in cyclic order with
    ``a`` its smallest vertex and ``b < d``; the list is sorted.
    """
    n = len(adjacency)
    found = set()
    for a in range(n):
        for c in range(a + 1, n):
            if c in adjacency[a]:
                continue
            common = sorted(adjacency[a] & adjacency[c])
            for b, d in combinations(common, 2):
                if d not in adjacency[b]:
                    found.add(frozenset((a, b, c, d)))
    squares = []
    for quad in found:
        a = min(quad)
        # the vertex opposite a is the one not adjacent to it
        (c,) = [x for x in quad if x != a and x not in adjacency[a]]
        b, d = sorted(quad - {a, c})
        squares.append((a, b, c, d))
    return sorted(squares)


def empty_squares(K: SimplicialComplex) -> list:
    """4-cycles of the 1-skeleton with neither diagonal, as label tuples."""
    return [K.label(sq) for sq in graph_empty_squares(K.adjacency)]


def is_flag_no_square(K: SimplicialComplex) -> bool:
    return is_flag(K) and not graph_empty_squares(K.adjacency)
