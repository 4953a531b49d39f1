"""Genus arithmetic for Stein 2-handlebodies and their boundary sums.

For a Stein domain built on Legendrian attaching curves with framing
tb - 1, the first Chern class evaluates on a 2-handle class through the
rotation numbers.  The adjunction inequality

    2 g(S) - 2 >= |<c1, [S]>| + [S].[S]

for essential surfaces of non-negative square then bounds genus from
below.  All analytic hypotheses enter as flags; only the arithmetic is
computed here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class ObstructionError(ValueError):
    pass


@dataclass(frozen=True)
class LegendrianData:
    tb: int
    r: int
    framing: int
    name: str = ""

    @property
    def stein(self) -> bool:
        """Framing equals tb - 1."""
        return self.framing == self.tb - 1

    def to_json(self) -> dict:
        return {"name": self.name, "tb": self.tb, "r": self.r, "framing": self.framing}

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "LegendrianData":
        try:
            tb, r = int(data["tb"]), int(data["r"])
        except (KeyError, TypeError, ValueError):
            raise ObstructionError(f"curve {name or data!r} needs integer tb and r") from None
        framing = int(data.get("framing", tb - 1))
        return cls(tb, r, framing, data.get("name", name))


# attaching curves G (green) and B (blue) of the two 2-handles
STANDARD_G = LegendrianData(tb=1, r=1, framing=0, name="G")
STANDARD_B = LegendrianData(tb=1, r=3, framing=0, name="B")


def family_curve(m: int) -> LegendrianData:
    """B modified by m positive clasps and m positive stabilizations: the
    Chern evaluation rises by m; tb and the 0-framing are kept."""
    if m < 0:
        raise ObstructionError("m must be non-negative")
    return LegendrianData(tb=STANDARD_B.tb, r=STANDARD_B.r + m, framing=STANDARD_B.framing, name=f"B_{m}")


def chern_evaluation(G: LegendrianData, B: LegendrianData, orientation: int = 1) -> int:
    """<c1, alpha> = r(B) - r(G); ``orientation=-1`` for the opposite generator."""
    if orientation not in (1, -1):
        raise ObstructionError("orientation must be +1 or -1")
    for curve in (G, B):
        if not curve.stein:
            raise ObstructionError(
                f"curve {curve.name or curve}: framing {curve.framing} != tb - 1 = {curve.tb - 1}")
    return orientation * (B.r - G.r)


@dataclass(frozen=True)
class AdjunctionInput:
    c1_eval: int
    self_int: int
    k: int
    nonneg_asserted: bool = True  # caller vouches the inequality applies


def adjunction_genus_bound(inp: AdjunctionInput) -> int:
    """Least genus allowed for a surface in the class k*alpha."""
    if inp.k == 0:
        raise ObstructionError("k must be nonzero (the class must be essential)")
    if not inp.nonneg_asserted:
        raise ObstructionError("adjunction bound needs the applicability flag")
    sq = inp.k * inp.k * inp.self_int
    if sq < 0:
        raise ObstructionError("adjunction bound here needs non-negative self-intersection")
    total = abs(inp.k * inp.c1_eval) + sq + 2
    return -(-total // 2)


def min_genus_bound(c1_eval: int, self_int: int = 0, k_max: int = 10) -> int:
    """Smallest adjunction bound over all classes k*alpha, 0 < |k| <= k_max."""
    return min(adjunction_genus_bound(AdjunctionInput(c1_eval, self_int, k))
               for k in range(-k_max, k_max + 1) if k)


def boundary_sum_genus_bound(bounds: Sequence[int], projections: Sequence[bool],
                             reversed_flags: Sequence[bool] | None = None) -> int:
    """Genus bound for an essential surface in a boundary sum.

    Its class projects nontrivially to at least one summand and can be
    pushed into that summand, so the bound is the least per-summand bound
    among summands hit.  Orientation reversal does not change a summand's
    bound; the flags are accepted for the record only.
    """
    if len(bounds) != len(projections):
        raise ObstructionError("one projection flag per summand")
    if reversed_flags is not None and len(reversed_flags) != len(bounds):
        raise ObstructionError("one orientation flag per summand")
    hit = [b for b, p in zip(bounds, projections) if p]
    if not hit:
        raise ObstructionError("all projections zero: the surface is not essential")
    return min(hit)


@dataclass(frozen=True)
class SummandProfile:
    name: str
    genus_bound: int
    torus_representable: bool
    provenance: str

    def to_json(self) -> dict:
        return {"name": self.name, "genus_bound": self.genus_bound,
                "torus_representable": self.torus_representable, "provenance": self.provenance}


def x_profile(G: LegendrianData = STANDARD_G, B: LegendrianData = STANDARD_B) -> SummandProfile:
    c1 = chern_evaluation(G, B)
    return SummandProfile("X", min_genus_bound(c1), False,
                          f"adjunction with c1 = {c1}, square 0, minimized over k")


def x_prime_profile() -> SummandProfile:
    # the generator of H2 is carried by an embedded torus; genus 0 is not
    # excluded by this arithmetic but is not needed to separate the pair
    return SummandProfile("X'", 1, True, "embedded torus realizes the generator")


def distinguishing_report(n_summands: int = 3) -> dict:
    """Bounds for essential surfaces in boundary sums of copies of X versus X'."""
    X, Xp = x_profile(), x_prime_profile()
    return {
        "c1_eval": chern_evaluation(STANDARD_G, STANDARD_B),
        "X": X.to_json(),
        "X'": Xp.to_json(),
        "sum_of_X": boundary_sum_genus_bound([X.genus_bound] * n_summands, [True] + [False] * (n_summands - 1)),
        "sum_of_X'": boundary_sum_genus_bound([Xp.genus_bound] * n_summands, [True] + [False] * (n_summands - 1)),
        "distinguishes": X.genus_bound > Xp.genus_bound,
    }


def family_claim_report(m: int) -> dict:
    """Two numbers for the m-th member of the family, kept apart.

    ``stated_min_genus`` is the published exclusion (no surface of genus
    <= 2 + m); ``derived_min_genus`` is what the adjunction arithmetic gives
    with the Chern evaluation raised by m.  They are not reconciled here.
    """
    c1 = chern_evaluation(STANDARD_G, family_curve(m))
    derived_k1 = adjunction_genus_bound(AdjunctionInput(c1, 0, 1))
    stated = 3 + m
    return {
        "m": m,
        "c1_eval": c1,
        "stated_min_genus": stated,
        "stated_provenance": "published claim: genus <= 2 + m excluded",
        "derived_min_genus": derived_k1,
        "derived_provenance": "adjunction with c1 = 2 + m, square 0, k = 1: ceil((2 + m) / 2) + 1",
        "agree": stated == derived_k1,
    }
