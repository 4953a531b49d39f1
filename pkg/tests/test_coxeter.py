import random

import pytest

from reflection_trick.complex_core.standard import cycle, octahedron, two_points
from reflection_trick.coxeter import (
    NerveGraph,
    ReducedWord,
    abelianization_vector,
    ball_csv,
    commutator_index,
    contains_Z2,
    coset_minimal,
    descent_set,
    enumerate_ball,
    generator,
    growth_series,
    identity,
    in_commutator_subgroup,
    is_hyperbolic,
    length,
    multiply,
    reduce,
    sphere_sizes,
    torsion_scan,
    z2_witness,
)
from reflection_trick.errors import GuardExceeded, WordError

import oracles

PENT = NerveGraph.from_complex(cycle(5))
EDGE = NerveGraph.from_labels(["v", "w"], [("v", "w")])
FREE = NerveGraph.from_labels(["v", "w"], [])


def test_involution():
    assert reduce("v v", EDGE).is_identity


def test_commute_then_cancel():
    assert str(reduce("v w v", EDGE)) == "w"


def test_no_relation():
    w = reduce("v w v", FREE)
    assert str(w) == "v w v"
    assert length(w) == 3


def test_normal_form_is_lex_least():
    # v0 and v2 do not commute in the pentagon; v0, v1 do
    assert str(reduce("v1 v0", PENT)) == "v0 v1"
    assert str(reduce("v2 v0", PENT)) == "v2 v0"
    assert str(reduce("v3 v1 v0", PENT)) == "v3 v0 v1"


def test_unknown_generator():
    with pytest.raises(WordError):
        reduce("v x", EDGE)


def test_nerve_mismatch():
    with pytest.raises(WordError):
        multiply(generator(EDGE, "v"), generator(FREE, "v"))


def test_bad_nerve():
    with pytest.raises(WordError):
        NerveGraph.from_labels(["a"], [("a", "b")])
    with pytest.raises(WordError):
        NerveGraph.from_labels(["a", "a"], [])


def test_descent_sets():
    assert descent_set(identity(EDGE)) == frozenset()
    assert descent_set(generator(EDGE, "v")) == {"v"}
    assert descent_set(reduce("v w", EDGE)) == {"v", "w"}
    assert descent_set(reduce("v w", FREE)) == {"w"}


def test_descent_set_by_length_oracle():
    ball = enumerate_ball(PENT, 5)
    gens = [generator(PENT, g) for g in PENT.generators]
    for w in ball[:400]:
        ref = {PENT.generators[i] for i, s in enumerate(gens) if (w * s).length < w.length}
        assert descent_set(w) == ref
        for s in gens:
            assert abs((w * s).length - w.length) == 1


def test_descents_are_cliques():
    K = octahedron()
    G = NerveGraph.from_complex(K)
    for w in enumerate_ball(G, 4):
        d = sorted(w.descents)
        assert all(G.commute(a, b) for i, a in enumerate(d) for b in d[i + 1:])


def test_coset_minimal():
    w = reduce("v2 v0 v1", PENT)
    assert str(coset_minimal(w, {0, 1})) == "v2"
    assert coset_minimal(w, {3}) == w


def test_pentagon_ball_radius_one():
    ball = enumerate_ball(PENT, 1)
    assert len(ball) == 6
    assert ball[0].is_identity


def test_pentagon_sphere_sizes():
    sizes = sphere_sizes(enumerate_ball(PENT, 8))
    assert sizes == [1, 5, 15, 40, 105, 275, 720, 1885, 4935]
    assert sizes == oracles.tits_sphere_sizes(5, PENT.edges, 8)
    assert growth_series(PENT, 9) == sizes


def test_square_growth_linear():
    G = NerveGraph.from_complex(cycle(4))
    sizes = sphere_sizes(enumerate_ball(G, 7))
    assert sizes == [1, 4] + [4 * k for k in range(2, 8)]
    assert sizes == oracles.tits_sphere_sizes(4, G.edges, 7)


def test_finite_group_ball_stops():
    ball = enumerate_ball(EDGE, 10)
    assert len(ball) == 4


def test_ball_order():
    ball = enumerate_ball(PENT, 3)
    keys = [(w.length, w.letters) for w in ball]
    assert keys == sorted(keys)


def test_ball_guard():
    with pytest.raises(GuardExceeded):
        enumerate_ball(PENT, 8, max_elements=1000)


def test_ball_csv():
    text = ball_csv(enumerate_ball(PENT, 1))
    lines = text.splitlines()
    assert lines[0] == "index,length,normal_form"
    assert lines[1] == "1,0,"
    assert lines[2] == "2,1,v0"


def test_hyperbolicity():
    assert is_hyperbolic(PENT)
    assert is_hyperbolic(cycle(6))
    assert not is_hyperbolic(cycle(4))
    assert contains_Z2(cycle(4))
    assert z2_witness(PENT) is None


def test_z2_witness_commutes_and_has_infinite_order():
    a, b = z2_witness(NerveGraph.from_complex(cycle(4)))
    assert a * b == b * a
    for w in (a, b):
        p = w
        for k in range(2, 6):
            p = p * w
            assert p.length == 2 * k


def test_abelianization():
    v = generator(FREE, "v")
    assert abelianization_vector(v) == (1, 0)
    assert not in_commutator_subgroup(v)
    assert in_commutator_subgroup(reduce("v w v w", FREE))
    assert commutator_index(PENT) == 32


def test_torsion_scans():
    assert torsion_scan(PENT, 6) == []
    full = torsion_scan(PENT, 1, subgroup="full")
    assert [str(w) for w in full] == ["v0", "v1", "v2", "v3", "v4"]
    full2 = torsion_scan(PENT, 2, subgroup="full")
    assert reduce("v0 v1", PENT) in full2
    with pytest.raises(ValueError):
        torsion_scan(PENT, 0)


def test_tits_oracle_agrees_with_normal_forms():
    rng = random.Random(5)
    for w in enumerate_ball(PENT, 4):
        u = reduce([rng.choice(PENT.generators) for _ in range(6)], PENT)
        same = (w == u)
        assert same == (oracles.tits_matrix(w.letters, 5, PENT.edges)
                        == oracles.tits_matrix(u.letters, 5, PENT.edges))


def test_two_points_is_infinite_dihedral():
    G = NerveGraph.from_complex(two_points())
    assert sphere_sizes(enumerate_ball(G, 6)) == [1, 2, 2, 2, 2, 2, 2]


def test_word_str_and_inverse():
    w = reduce("v0 v2 v4", PENT)
    assert str(w) == "v0 v2 v4"
    assert (w * w.inverse()).is_identity
    assert repr(identity(PENT)) == "ReducedWord('e')"
    assert isinstance(w, ReducedWord)
