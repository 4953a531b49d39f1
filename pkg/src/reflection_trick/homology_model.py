"""Topology the cone chambers cannot carry.

Two pieces: the homology of a boundary sum of n copies of an abstract
chamber with a declared profile, and the free product of copies of Z^2
(one per element of W) that models the fundamental group of the Davis
complex built from a chamber homotopy equivalent to a torus.

Free-product words are tuples of syllables ``(factor, (a, b))`` where the
factor label is a :class:`ReducedWord` (any hashable works) and (a, b) is a
nonzero element of that copy of Z^2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complex_core.homology import HomologyProfile, _normalize_chain
from .coxeter import NerveGraph, ReducedWord, enumerate_ball, reduce


@dataclass(frozen=True)
class ChamberHomologyProfile:
    """Declared homology of an abstract chamber, plus whether its degree-2
    generator is carried by an embedded torus."""

    profile: HomologyProfile
    torus_representable: bool = False
    name: str = ""

    def __post_init__(self):
        if self.profile.rank(0) != 1:
            raise ValueError("a chamber profile must be connected (degree-0 rank 1)")

    @classmethod
    def torus(cls, torus_representable: bool = False, name: str = "") -> "ChamberHomologyProfile":
        return cls(HomologyProfile.torus(), torus_representable, name)

    @classmethod
    def contractible(cls) -> "ChamberHomologyProfile":
        return cls(HomologyProfile.point(), False, "contractible")


def truncation_homology(profile, n: int) -> HomologyProfile:
    """Homology of the boundary sum of n chambers: reduced homology adds up."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if isinstance(profile, ChamberHomologyProfile):
        profile = profile.profile
    if profile.rank(0) != 1:
        raise ValueError("chamber profile must be connected")
    ranks = [1] + [n * profile.rank(k) for k in range(1, len(profile.ranks))]
    torsion = [()] + [tuple(d for d in _normalize_chain(list(profile.torsion_at(k)) * n) if d > 1)
                      for k in range(1, len(profile.ranks))]
    return HomologyProfile(tuple(ranks), tuple(torsion))


# -- free product of Z^2 factors ---------------------------------------------

Syllable = tuple  # (factor, (a, b))


def _check_syllable(s):
    factor, (a, b) = s
    if not (isinstance(a, int) and isinstance(b, int)):
        raise TypeError(f"syllable {s!r} needs an integer pair")
    return factor, (a, b)


def fp_normal_form(word) -> tuple:
    """Merge neighbouring syllables of the same factor and drop zeros."""
    out: list = []
    for s in word:
        factor, (a, b) = _check_syllable(s)
        if out and out[-1][0] == factor:
            _, (c, d) = out.pop()
            a, b = a + c, b + d
        if a or b:
            out.append((factor, (a, b)))
    return tuple(out)


def fp_multiply(*words) -> tuple:
    return fp_normal_form(s for w in words for s in w)


def fp_inverse(word) -> tuple:
    return tuple((f, (-a, -b)) for f, (a, b) in reversed(fp_normal_form(word)))


def fp_power(word, k: int) -> tuple:
    base = fp_normal_form(word) if k >= 0 else fp_inverse(word)
    return fp_multiply(*([base] * abs(k)))


def fp_commute(a, b) -> bool:
    return fp_multiply(a, b) == fp_multiply(b, a)


def fp_cyclic_reduce(word) -> tuple:
    """Return (c, core) with word = c core c^-1 and core cyclically reduced."""
    w = fp_normal_form(word)
    conj: tuple = ()
    while len(w) >= 2 and w[0][0] == w[-1][0]:
        last = (w[-1],)
        w = fp_multiply(last, w, fp_inverse(last))
        conj = fp_multiply(conj, fp_inverse(last))
    return conj, w


def fp_conjugate_into_factor(word):
    """Factor label of the unique factor a conjugate of ``word`` lies in,
    or None (for the identity, or for elements of no factor conjugate)."""
    _, core = fp_cyclic_reduce(word)
    if len(core) == 1:
        return core[0][0]
    return None


def powers_grow(word, max_exponent: int = 10) -> bool:
    """Syllable length of word^k strictly increases for k = 1..max_exponent."""
    lengths = [len(fp_power(word, k)) for k in range(1, max_exponent + 1)]
    return all(x < y for x, y in zip(lengths, lengths[1:]))


def fp_to_json(word) -> list:
    return [[str(f) if isinstance(f, ReducedWord) else f, [a, b]] for f, (a, b) in word]


def fp_from_json(data, nerve: NerveGraph | None = None) -> tuple:
    out = []
    for label, (a, b) in data:
        factor = reduce(label, nerve) if nerve is not None else label
        out.append((factor, (int(a), int(b))))
    return tuple(out)


# -- randomized property runs ---------------------------------------------------

@dataclass
class FreeProductReport:
    commuting_pairs: int = 0
    commuting_ok: int = 0
    cross_pairs: int = 0
    cross_ok: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.violations and self.commuting_ok == self.commuting_pairs
                and self.cross_ok == self.cross_pairs)

    def to_json(self) -> dict:
        return {
            "commuting_pairs": self.commuting_pairs,
            "commuting_same_factor": self.commuting_ok,
            "cross_factor_pairs": self.cross_pairs,
            "cross_factor_noncommuting": self.cross_ok,
            "violations": [[fp_to_json(a), fp_to_json(b), why] for a, b, why in self.violations[:20]],
            "passed": self.passed,
        }


def default_factors(radius: int = 2) -> list:
    """Factor labels: the elements of a small ball in the pentagon group."""
    from .complex_core.standard import cycle

    return enumerate_ball(NerveGraph.from_complex(cycle(5)), radius)


def _random_pair(rng: random.Random, spread: int = 5) -> tuple:
    while True:
        p = (rng.randint(-spread, spread), rng.randint(-spread, spread))
        if p != (0, 0):
            return p


def _random_word(rng: random.Random, factors, max_syllables: int = 4) -> tuple:
    return fp_normal_form((rng.choice(factors), _random_pair(rng))
                          for _ in range(rng.randint(0, max_syllables)))


def z2_in_factor_property(sample_size: int = 1000, seed: int = 0, factors=None) -> FreeProductReport:
    """Commuting pairs built inside a conjugated factor commute and conjugate
    into that factor; pairs from conjugates of two different factors never
    commute."""
    factors = list(factors) if factors is not None else default_factors()
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    rng = random.Random(seed)
    rep = FreeProductReport()
    for _ in range(sample_size):
        F = rng.choice(factors)
        g = _random_word(rng, factors)
        a = fp_multiply(g, ((F, _random_pair(rng)),), fp_inverse(g))
        b = fp_multiply(g, ((F, _random_pair(rng)),), fp_inverse(g))
        rep.commuting_pairs += 1
        if not fp_commute(a, b):
            rep.violations.append((a, b, "conjugated factor elements do not commute"))
        elif not (fp_conjugate_into_factor(a) == fp_conjugate_into_factor(b) == F):
            rep.violations.append((a, b, "commuting pair not conjugate into one factor"))
        else:
            rep.commuting_ok += 1
    for _ in range(sample_size):
        F1, F2 = rng.sample(factors, 2)
        g, h = _random_word(rng, factors), _random_word(rng, factors)
        a = fp_multiply(g, ((F1, _random_pair(rng)),), fp_inverse(g))
        b = fp_multiply(h, ((F2, _random_pair(rng)),), fp_inverse(h))
        rep.cross_pairs += 1
        if fp_commute(a, b):
            rep.violations.append((a, b, "cross-factor pair commutes"))
        else:
            rep.cross_ok += 1
    return rep
