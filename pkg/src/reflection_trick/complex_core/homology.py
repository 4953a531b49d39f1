"""Integral homology through Smith normal form of boundary matrices.

Everything is exact integer arithmetic.  Boundary matrices of the complexes
built here are sparse with mostly unit entries, so elimination first pivots
on every available +-1 entry (cheap, no growth), then runs a dense Smith
normal form on the small core that remains, always pivoting on the entry of
smallest absolute value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .simplicial import SimplicialComplex, Subcomplex


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _dense_invariants(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal of a Smith form of a dense integer matrix (unsorted)."""
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for j in range(t, n):
                    rt[j] += rb[j]
                continue
            # move the smallest nonzero entry of row/column t onto the pivot
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, pi, pj = best
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _normalize_chain(diag: Iterable[int]) -> list[int]:
    """Rewrite diagonal entries so each divides the next (gcd/lcm exchange)."""
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def invariant_factors(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix, in divisibility order.

    ``rows`` maps row keys to ``{column key: entry}``.  The number of
    returned factors is the rank.
    """
    R = {r: {c: v for c, v in row.items() if v} for r, row in rows.items()}
    R = {r: row for r, row in R.items() if row}
    cols: dict = {}
    for r, row in R.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    units = 0
    progress = True
    while progress:
        progress = False
        for r in list(R):
            row = R.get(r)
            if not row:
                continue
            pc = None
            for c, v in row.items():
                if v == 1 or v == -1:
                    if pc is None or len(cols[c]) < len(cols[pc]):
                        pc = c
            if pc is None:
                continue
            prow = R.pop(r)
            pv = prow[pc]
            for c in prow:
                cols[c].discard(r)
            for r2 in list(cols[pc]):
                row2 = R[r2]
                f = row2[pc] * pv  # pv is its own inverse
                for c, v in prow.items():
                    nv = row2.get(c, 0) - f * v
                    if nv:
                        if c not in row2:
                            cols[c].add(r2)
                        row2[c] = nv
                    elif c in row2:
                        del row2[c]
                        cols[c].discard(r2)
                if not row2:
                    del R[r2]
            del cols[pc]
            units += 1
            progress = True
    core_cols = sorted({c for row in R.values() for c in row}, key=repr)
    if not core_cols:
        return [1] * units
    cidx = {c: j for j, c in enumerate(core_cols)}
    dense = []
    for row in R.values():
        line = [0] * len(core_cols)
        for c, v in row.items():
            line[cidx[c]] = v
        dense.append(line)
    return [1] * units + _normalize_chain(_dense_invariants(dense))


def matrix_rank(rows: Mapping[Hashable, Mapping[Hashable, int]]) -> int:
    return len(invariant_factors(rows))


# ---------------------------------------------------------------------------
# Chain complexes
# ---------------------------------------------------------------------------

@dataclass
class CellComplex:
    """Finite chain complex with integer boundary, keyed by hashable cells.

    ``cells[k]`` lists the k-cells; ``boundary[cell]`` maps faces to
    incidence numbers.  Simplicial complexes, subcomplexes, tiled Davis
    truncations and quotients are all converted to this form.
    """

    cells: list = field(default_factory=list)
    boundary: dict = field(default_factory=dict)

    def add_cell(self, dim: int, key, faces: Mapping | None = None):
        while len(self.cells) <= dim:
            self.cells.append([])
        self.cells[dim].append(key)
        self.boundary[key] = dict(faces or {})

    @property
    def dimension(self) -> int:
        return len(self.cells) - 1

    def count(self, k: int) -> int:
        return len(self.cells[k]) if 0 <= k < len(self.cells) else 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in enumerate(self.cells))

    def boundary_rows(self, k: int) -> dict:
        """Rows of the boundary map from k-cells to (k-1)-cells."""
        if k <= 0 or k >= len(self.cells):
            return {}
        return {c: self.boundary[c] for c in self.cells[k]}

    def restrict(self, keep) -> "CellComplex":
        """Subcomplex on the cells for which ``keep(cell)`` is true.

        The caller is responsible for the selection being closed under faces.
        """
        out = CellComplex()
        for k, cs in enumerate(self.cells):
            for c in cs:
                if keep(c):
                    out.add_cell(k, c, self.boundary[c])
        return out

    def check(self) -> None:
        """Assert boundary of boundary vanishes (debug aid)."""
        for k in range(2, len(self.cells)):
            for c in self.cells[k]:
                acc: dict = {}
                for f, a in self.boundary[c].items():
                    for g, b in self.boundary[f].items():
                        acc[g] = acc.get(g, 0) + a * b
                if any(acc.values()):
                    raise AssertionError(f"boundary of boundary nonzero at {c!r}")


@dataclass(frozen=True)
class HomologyProfile:
    """Ranks and torsion coefficients of integral homology, degree by degree."""

    ranks: tuple
    torsion: tuple = ()

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        tors = tuple(tuple(t) for t in self.torsion)
        tors = tors + ((),) * (len(ranks) - len(tors))
        # trailing zero degrees carry no information
        while len(ranks) > 1 and ranks[-1] == 0 and not tors[len(ranks) - 1]:
            ranks = ranks[:-1]
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "torsion", tors[:len(ranks)])

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def torsion_at(self, k: int) -> tuple:
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    @property
    def is_acyclic(self) -> bool:
        """Trivial reduced homology (connected, nothing above degree 0)."""
        return self.ranks == (1,) and not any(self.torsion)

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion)

    def to_json(self) -> dict:
        return {str(k): {"rank": r, "torsion": list(self.torsion_at(k))}
                for k, r in enumerate(self.ranks)}

    @classmethod
    def from_json(cls, data: Mapping) -> "HomologyProfile":
        top = max(int(k) for k in data)
        ranks = [0] * (top + 1)
        tors = [()] * (top + 1)
        for k, entry in data.items():
            ranks[int(k)] = entry["rank"]
            tors[int(k)] = tuple(entry.get("torsion", ()))
        return cls(tuple(ranks), tuple(tors))

    @classmethod
    def point(cls) -> "HomologyProfile":
        return cls((1,))

    @classmethod
    def sphere(cls, d: int) -> "HomologyProfile":
        if d == 0:
            return cls((2,))
        return cls((1,) + (0,) * (d - 1) + (1,))

    @classmethod
    def torus(cls) -> "HomologyProfile":
        return cls((1, 2, 1))


def chain_homology(C: CellComplex) -> HomologyProfile:
    top = C.dimension
    if top < 0:
        return HomologyProfile((0,))
    facs = [None] + [invariant_factors(C.boundary_rows(k)) for k in range(1, top + 1)] + [[]]
    ranks, tors = [], []
    for k in range(top + 1):
        rank_out = len(facs[k]) if k > 0 else 0
        rank_in = len(facs[k + 1])
        ranks.append(C.count(k) - rank_out - rank_in)
        tors.append(tuple(d for d in facs[k + 1] if d > 1))
    return HomologyProfile(tuple(ranks), tuple(tors))


def simplicial_chain_complex(simplices: Iterable[tuple]) -> CellComplex:
    """Oriented simplicial chain complex of a downward-closed simplex set."""
    by_dim: dict = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    C = CellComplex()
    for k in range(max(by_dim, default=-1) + 1):
        for s in sorted(by_dim.get(k, ())):
            faces = {}
            if k > 0:
                for i in range(k + 1):
                    faces[s[:i] + s[i + 1:]] = (-1) ** i
            C.add_cell(k, s, faces)
    return C


def to_chain_complex(X) -> CellComplex:
    if isinstance(X, CellComplex):
        return X
    if isinstance(X, (SimplicialComplex, Subcomplex)):
        return simplicial_chain_complex(X.simplex_set)
    raise TypeError(f"cannot take homology of {type(X).__name__}")


def homology(X) -> HomologyProfile:
    """Integral homology of a simplicial complex, subcomplex or cell complex."""
    return chain_homology(to_chain_complex(X))


def euler_characteristic(X) -> int:
    """Alternating cell count."""
    return to_chain_complex(X).euler_characteristic()
