"""The basic construction with cone chambers.

The chamber is the cone over the barycentric subdivision sd(T) of the
nerve.  The mirror X_v is the closed dual cell of v inside sd(T): the
chains of simplices of T whose smallest member contains v.  A cell of the
chamber therefore lies in the mirrors indexed by the vertices of the
smallest simplex in its chain; cells through the cone point lie in none.

Tiles are glued cell by cell: (g, c) ~ (h, c) iff g^-1 h lies in the
special subgroup W_c generated by the mirrors through c.  Each class is
labelled by its shortest coset representative, so a truncation never has
to look at tiles outside it.  The finite quotient by the commutator
subgroup uses the same rule with W replaced by its parity image (Z/2)^V.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Sequence

from .complex_core.homology import CellComplex, HomologyProfile, chain_homology, homology, matrix_rank
from .complex_core.io import format_label
from .complex_core.simplicial import SimplicialComplex, Subcomplex, cone, connected_components
from .complex_core.subdivision import barycentric_subdivision
from .coxeter import (
    DEFAULT_MAX_ELEMENTS,
    NerveGraph,
    ReducedWord,
    abelianization_vector,
    coset_minimal,
    enumerate_ball,
)
from .errors import CertificateError, GuardExceeded

APEX = "*"


@dataclass(frozen=True)
class ConeChamber:
    base: SimplicialComplex
    sd: SimplicialComplex
    cone: SimplicialComplex
    cell_mirrors: dict  # cone simplex -> frozenset of base vertex indices
    mirrors: tuple  # base vertex index -> Subcomplex of sd

    @property
    def apex(self) -> int:
        return self.sd.n_vertices

    @cached_property
    def nerve(self) -> NerveGraph:
        return NerveGraph.from_complex(self.base)

    def cells(self) -> list:
        return self.cone.simplices()

    def mirror(self, label) -> Subcomplex:
        return self.mirrors[self.base.index(label)]


def build_chamber(T: SimplicialComplex) -> ConeChamber:
    sd = barycentric_subdivision(T)
    # sd vertex i is the barycenter of T.simplices()[i]
    carrier = T.simplices()
    apex_label = APEX
    while apex_label in sd._index:
        apex_label += "*"
    C = cone(sd, apex_label)
    apex = sd.n_vertices
    cell_mirrors = {}
    for s in C.simplices():
        if apex in s:
            cell_mirrors[s] = frozenset()
        else:
            cell_mirrors[s] = frozenset(min((carrier[i] for i in s), key=len))
    mirrors = tuple(
        Subcomplex(sd, frozenset(s for s, m in cell_mirrors.items() if v in m))
        for v in range(T.n_vertices))
    return ConeChamber(T, sd, C, cell_mirrors, mirrors)


def mirror_pattern(chamber: ConeChamber) -> set:
    """Pairs {v, w} (v < w) whose mirrors meet."""
    n = chamber.base.n_vertices
    return {(v, w) for v in range(n) for w in range(v + 1, n)
            if chamber.mirrors[v].simplex_set & chamber.mirrors[w].simplex_set}


# -- attach regions and disk certificates ----------------------------------

@dataclass
class DiskCertificate:
    status: str  # "verified" | "failed" | "inconclusive"
    checks: dict
    region_profile: HomologyProfile | None = None
    frontier_profile: HomologyProfile | None = None

    @property
    def ok(self) -> bool:
        return self.status != "failed"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checks": dict(self.checks),
            "region_homology": self.region_profile.to_json() if self.region_profile else None,
            "frontier_homology": self.frontier_profile.to_json() if self.frontier_profile else None,
        }


@dataclass
class AttachRegion:
    index: int | None
    word: ReducedWord
    descents: tuple  # base vertex indices
    region: Subcomplex

    @cached_property
    def certificate(self) -> DiskCertificate:
        return disk_certificate(self)


def attach_region(chamber: ConeChamber, w: ReducedWord, index: int | None = None) -> AttachRegion:
    """Union of the mirrors indexed by the descent set of w."""
    if w.is_identity:
        raise ValueError("the identity tile has no attach region")
    desc = tuple(sorted(w.descents))
    cells = frozenset().union(*(chamber.mirrors[v].simplex_set for v in desc))
    return AttachRegion(index, w, desc, Subcomplex(chamber.sd, cells))


def disk_certificate(region) -> DiskCertificate:
    """Homological disk test for a codimension-zero region of sd(T).

    Checks: nonempty, connected, acyclic, Euler characteristic 1, and a
    frontier with the homology of a sphere one dimension down (empty for a
    point).  In dimension >= 3 passing every check is reported as
    inconclusive.
    """
    R = region.region if isinstance(region, AttachRegion) else region
    checks: dict = {"nonempty": not R.is_empty}
    if R.is_empty:
        return DiskCertificate("failed", checks)
    prof = homology(R)
    d = R.dimension
    front = R.frontier()
    fprof = None if front.is_empty else homology(front)
    checks["connected"] = prof.rank(0) == 1
    checks["acyclic"] = prof.is_acyclic
    checks["euler_one"] = prof.euler_characteristic == 1
    if d == 0:
        checks["frontier_sphere"] = front.is_empty
    else:
        checks["frontier_sphere"] = fprof is not None and fprof == HomologyProfile.sphere(d - 1)
    if not all(checks.values()):
        status = "failed"
    elif d >= 3:
        status = "inconclusive"
    else:
        status = "verified"
    return DiskCertificate(status, checks, prof, fprof)


# -- tile assembly ------------------------------------------------------------

@dataclass
class TileComplex:
    """Tiles glued into one cell complex.

    ``tile_cells[i]`` is the set of cell keys covered by tile ``i``; the
    union of the first k of them is the truncation P_k.
    """

    chamber: ConeChamber
    tiles: list
    complex: CellComplex
    tile_cells: list
    words: list | None = None
    adjacency: list = field(default_factory=list)  # (i, j, mirror label)

    @property
    def n_tiles(self) -> int:
        return len(self.tiles)

    @property
    def signs(self) -> list:
        if self.words is None:
            return []
        return [(-1) ** w.length for w in self.words]

    def prefix_keys(self, k: int) -> set:
        out = set()
        for cells in self.tile_cells[:k]:
            out |= cells
        return out

    def prefix(self, k: int) -> CellComplex:
        keep = self.prefix_keys(k)
        return self.complex.restrict(lambda c: c in keep)

    def euler_characteristic(self, k: int | None = None) -> int:
        C = self.complex if k is None else self.prefix(k)
        return C.euler_characteristic()

    def homology(self, k: int | None = None) -> HomologyProfile:
        return chain_homology(self.complex if k is None else self.prefix(k))

    def adjacency_connected(self) -> bool:
        comps = connected_components(self.n_tiles, ((i, j) for i, j, _ in self.adjacency))
        return len(comps) == 1

    def signs_alternate(self) -> bool:
        s = self.signs
        return all(s[i] == -s[j] for i, j, _ in self.adjacency)

    # -- exports
    def to_json(self) -> dict:
        nodes = []
        for i, w in enumerate(self.words or self.tiles):
            node = {"index": i}
            if self.words is not None:
                node.update(normal_form=str(w), length=w.length, sign=(-1) ** w.length)
            else:
                node["tile"] = format_label(w)
            nodes.append(node)
        edges = [{"source": i, "target": j, "mirror": format_label(m)} for i, j, m in self.adjacency]
        return {"nodes": nodes, "edges": edges}

    def to_dot(self) -> str:
        lines = ["graph tiles {"]
        for node in self.to_json()["nodes"]:
            label = node.get("normal_form", node.get("tile")) or "e"
            extra = f", sign={node['sign']}" if "sign" in node else ""
            lines.append(f'  {node["index"]} [label="{label}"{extra}];')
        for i, j, m in self.adjacency:
            lines.append(f'  {i} -- {j} [label="{format_label(m)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def boundary_json(C: CellComplex) -> dict:
    """Cells per dimension and sparse boundary matrices (row, col, coeff)."""
    names = {}
    cells = []
    for k, cs in enumerate(C.cells):
        cells.append([_key_name(c) for c in cs])
        for n, c in enumerate(cs):
            names[c] = n
    mats = []
    for k in range(1, len(C.cells)):
        entries = []
        for r, c in enumerate(C.cells[k]):
            for f, a in sorted(C.boundary[c].items(), key=lambda fa: names[fa[0]]):
                entries.append([r, names[f], a])
        mats.append({"dim": k, "rows": len(C.cells[k]), "cols": len(C.cells[k - 1]), "entries": entries})
    return {"cells": cells, "boundary": mats}


def _key_name(key) -> str:
    tile, simplex = key
    return f"{format_label(tile)}|{','.join(map(str, simplex))}"


def assemble_tiles(chamber: ConeChamber, tiles: Sequence[Hashable],
                   key_fn: Callable, max_cells: int | None = None) -> TileComplex:
    """Glue one copy of the chamber per tile; ``key_fn(tile, cell)`` names
    the glued cell that (tile, cell) represents."""
    C = CellComplex()
    seen = set()
    tile_cells = []
    cells = chamber.cells()
    for t in tiles:
        mine = set()
        for s in cells:
            key = key_fn(t, s)
            mine.add(key)
            if key in seen:
                continue
            seen.add(key)
            if max_cells is not None and len(seen) > max_cells:
                raise GuardExceeded("cell", max_cells, len(seen))
            faces = {}
            if len(s) > 1:
                for i in range(len(s)):
                    faces[key_fn(t, s[:i] + s[i + 1:])] = (-1) ** i
            C.add_cell(len(s) - 1, key, faces)
        tile_cells.append(mine)
    return TileComplex(chamber, list(tiles), C, tile_cells)


def davis_key_fn(chamber: ConeChamber):
    cache: dict = {}

    def key(w: ReducedWord, s):
        m = chamber.cell_mirrors[s]
        ck = (w.letters, m)
        if ck not in cache:
            cache[ck] = coset_minimal(w, m).letters
        return (cache[ck], s)

    return key


def chamber_order(G: NerveGraph, n: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list:
    """First n elements in (length, normal form) order; fewer if W is finite."""
    r = 0
    ball = enumerate_ball(G, 0, max_elements)
    while len(ball) < n:
        r += 1
        bigger = enumerate_ball(G, r, max_elements)
        if len(bigger) == len(ball):
            break
        ball = bigger
    return ball[:n]


def build_truncation(T, n: int, max_tiles: int = 4096, max_cells: int = 2_000_000) -> TileComplex:
    """The truncation P_n (equivalently R_n): the first n chambers of the
    Davis complex in chamber order, glued by the mirror relation."""
    chamber = T if isinstance(T, ConeChamber) else build_chamber(T)
    if n < 1:
        raise ValueError("need at least one tile")
    if n > max_tiles:
        raise GuardExceeded("tile", max_tiles, n)
    G = chamber.nerve
    words = chamber_order(G, n, max_elements=max(max_tiles, n) * max(G.rank, 1) + 1)
    tc = assemble_tiles(chamber, words, davis_key_fn(chamber), max_cells)
    tc.words = words
    where = {w.letters: i for i, w in enumerate(words)}
    for i, w in enumerate(words):
        for v in range(G.rank):
            if v in w.descents:
                continue
            u = w * ReducedWord(G, (v,))
            j = where.get(u.letters)
            if j is not None:
                tc.adjacency.append((i, j, G.generators[v]))
    return tc


def mirror_sharing_pairs(tc: TileComplex) -> set:
    """Pairs (i, j, v) of tiles whose images of the mirror X_v coincide,
    read off the assembled cells rather than the group."""
    chamber = tc.chamber
    key_fn = davis_key_fn(chamber)
    buckets: dict = {}
    for i, w in enumerate(tc.words):
        for v, X in enumerate(chamber.mirrors):
            image = frozenset(key_fn(w, s) for s in X.simplex_set)
            buckets.setdefault(image, []).append((i, v))
    out = set()
    for members in buckets.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                (i, v), (j, u) = members[a], members[b]
                if u == v:
                    out.add((min(i, j), max(i, j), chamber.base.vertices[v]))
    return out


def assembled_intersection(tc: TileComplex, k: int) -> Subcomplex:
    """P_k intersected with tile k (0-based), as a subcomplex of sd(T)."""
    earlier = tc.prefix_keys(k)
    key_fn = davis_key_fn(tc.chamber)
    w = tc.words[k]
    cells = frozenset(s for s in tc.chamber.sd.simplex_set if key_fn(w, s) in earlier)
    return Subcomplex(tc.chamber.sd, cells)


# -- Euler characteristics and quotients -----------------------------------

def orbifold_euler(chamber: ConeChamber) -> Fraction:
    """Sum over chamber cells of (-1)^dim / |W_c|, with |W_c| = 2^{#mirrors}."""
    total = Fraction(0)
    for s, m in chamber.cell_mirrors.items():
        total += Fraction((-1) ** (len(s) - 1), 2 ** len(m))
    return total


def quotient_euler(chamber: ConeChamber) -> int:
    value = 2 ** chamber.base.n_vertices * orbifold_euler(chamber)
    if value.denominator != 1:
        raise CertificateError(f"quotient Euler characteristic {value} is not an integer")
    return int(value)


@dataclass
class QuotientResult:
    tiles: TileComplex
    n_chambers: int
    euler: int
    expected_euler: int
    profile: HomologyProfile

    def to_json(self) -> dict:
        C = self.tiles.complex
        return {
            "chambers": self.n_chambers,
            "cells": [C.count(k) for k in range(C.dimension + 1)],
            "euler": self.euler,
            "expected_euler": self.expected_euler,
            "homology": self.profile.to_json(),
        }


def build_quotient_complex(T, max_cells: int = 200_000) -> QuotientResult:
    """Q = D / W0 with one chamber per parity vector p in (Z/2)^V; the
    cell (p, c) is identified with (p + x, c) for x supported on the
    mirrors through c."""
    chamber = T if isinstance(T, ConeChamber) else build_chamber(T)
    n = chamber.base.n_vertices
    budget = 2 ** n * len(chamber.cell_mirrors)
    if budget > max_cells:
        raise GuardExceeded("quotient cell", max_cells, budget)
    parities = list(product((0, 1), repeat=n))

    def key(p, s):
        m = chamber.cell_mirrors[s]
        return (tuple(0 if i in m else x for i, x in enumerate(p)), s)

    tc = assemble_tiles(chamber, parities, key)
    for i, p in enumerate(parities):
        for v in range(n):
            if p[v] == 0:
                q = p[:v] + (1,) + p[v + 1:]
                tc.adjacency.append((i, parities.index(q), chamber.base.vertices[v]))
    euler = tc.complex.euler_characteristic()
    return QuotientResult(tc, len(parities), euler, quotient_euler(chamber), chain_homology(tc.complex))


def quotient_parity(w: ReducedWord) -> tuple:
    """The coset W0 w, i.e. the chamber of Q containing the image of tile w."""
    return abelianization_vector(w)


# -- H1 injectivity along the filtration ----------------------------------

def h1_injectivity(tc: TileComplex) -> list:
    """For k = 2..n: is H1(P_{k-1}; Q) -> H1(P_k; Q) injective?

    For A inside B, the kernel is (B1(B) with support in A) / B1(A), and the
    first space has dimension rank d2(B) minus the rank of d2(B) with the
    columns of A's edges deleted.
    """
    C = tc.complex
    out = []
    rows_all = C.boundary_rows(2)
    prev = tc.prefix_keys(1)
    rank_prev = matrix_rank({c: r for c, r in rows_all.items() if c in prev})
    for k in range(2, tc.n_tiles + 1):
        cur = prev | tc.tile_cells[k - 1]
        rows = {c: r for c, r in rows_all.items() if c in cur}
        rank_cur = matrix_rank(rows)
        outside = {c: {f: a for f, a in r.items() if f not in prev} for c, r in rows.items()}
        dim_killed = rank_cur - matrix_rank(outside)
        out.append(dim_killed == rank_prev)
        prev, rank_prev = cur, rank_cur
    return out


def h1_injectivity_check(T, n: int) -> bool:
    tc = T if isinstance(T, TileComplex) else build_truncation(T, n)
    return all(h1_injectivity(tc))


def misglued_pentagon() -> TileComplex:
    """Negative control: three pentagon chambers glued wrongly.

    Tiles 0 and 1 share the mirrors X_0 and X_2, giving an annulus; tile 2
    is attached along its whole boundary to a loop running once around the
    annulus (arcs X_0, X_1, X_2 from tile 0, arcs X_3, X_4 from tile 1), so
    the annulus' H1 dies.
    """
    from .complex_core.standard import cycle

    chamber = build_chamber(cycle(5))

    def key(t, s):
        m = chamber.cell_mirrors[s]
        if t == 0:
            return (0, s)
        if t == 1:
            return (0, s) if m & {0, 2} else (1, s)
        if not m:
            return (2, s)
        return (0, s) if m & {0, 1, 2} else (1, s)

    return assemble_tiles(chamber, [0, 1, 2], key)


def truncation_report(tc: TileComplex, with_homology: bool = True) -> dict:
    """Structural checks on a Davis truncation, prefix by prefix."""
    chamber = tc.chamber
    expected_pairs = {(i, j, m) for i, j, m in tc.adjacency}
    shared = mirror_sharing_pairs(tc)
    regions = []
    region_match = True
    for k in range(1, tc.n_tiles):
        reg = attach_region(chamber, tc.words[k], index=k)
        actual = assembled_intersection(tc, k)
        region_match &= actual.simplex_set == reg.region.simplex_set
        regions.append(reg.certificate.status)
    eulers = [tc.euler_characteristic(k) for k in range(1, tc.n_tiles + 1)]
    report = {
        "tiles": tc.n_tiles,
        "adjacency_edges": len(tc.adjacency),
        "adjacency_connected": tc.adjacency_connected(),
        "signs_alternate": tc.signs_alternate(),
        "adjacency_matches_cells": shared == {(min(i, j), max(i, j), m) for i, j, m in expected_pairs},
        "attach_regions_match_descents": region_match,
        "disk_certificates": {s: regions.count(s) for s in sorted(set(regions))},
        "euler_prefixes": eulers,
    }
    if with_homology:
        report["h1_prefixes"] = [tc.homology(k).rank(1) for k in range(1, tc.n_tiles + 1)]
        report["homology"] = tc.homology().to_json()
    return report


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
