import json
import random
from fractions import Fraction

import pytest

from reflection_trick.complex_core import HomologyProfile, Subcomplex, homology, validate_complex
from reflection_trick.complex_core.standard import (
    cycle,
    icosahedron,
    simplex_boundary,
    single_edge,
    single_vertex,
    two_points,
)
from reflection_trick.coxeter import NerveGraph, enumerate_ball, identity, reduce
from reflection_trick.davis import (
    assembled_intersection,
    attach_region,
    boundary_json,
    build_chamber,
    build_quotient_complex,
    build_truncation,
    disk_certificate,
    h1_injectivity,
    h1_injectivity_check,
    mirror_pattern,
    misglued_pentagon,
    orbifold_euler,
    quotient_euler,
    quotient_parity,
    truncation_report,
)
from reflection_trick.errors import GuardExceeded

import oracles

PENT = cycle(5)


@pytest.fixture(scope="module")
def pent_chamber():
    return build_chamber(PENT)


# -- chambers -------------------------------------------------------------------

def test_pentagon_chamber(pent_chamber):
    ch = pent_chamber
    assert homology(ch.cone) == HomologyProfile.point()
    for X in ch.mirrors:
        assert X.dimension == 1
        assert homology(X) == HomologyProfile.point()
    for v in range(5):
        w = (v + 1) % 5
        meet = ch.mirrors[v].simplex_set & ch.mirrors[w].simplex_set
        assert len(meet) == 1  # one point
        assert not ch.mirrors[v].simplex_set & ch.mirrors[(v + 2) % 5].simplex_set


def test_single_edge_chamber():
    ch = build_chamber(single_edge())
    assert ch.cone.f_vector == (4, 5, 2)
    meet = ch.mirrors[0].simplex_set & ch.mirrors[1].simplex_set
    assert [ch.sd.vertices[s[0]] for s in meet] == [("a", "b")]


def test_mirrors_cover_boundary(pent_chamber):
    union = frozenset().union(*(X.simplex_set for X in pent_chamber.mirrors))
    assert union == pent_chamber.sd.simplex_set


def test_mirror_pattern_matches_simplices():
    rng = random.Random(3)
    for _ in range(20):
        verts, facets = oracles.random_facets(rng, max_vertices=6, max_dim=2)
        T = validate_complex(verts, facets)
        ch = build_chamber(T)
        # direct subcomplex intersection, recomputed from scratch
        direct = set()
        for v in range(T.n_vertices):
            for w in range(v + 1, T.n_vertices):
                Xv = {s for s in ch.sd.simplex_set if all(v in ch.base.simplices()[i] for i in s)}
                Xw = {s for s in ch.sd.simplex_set if all(w in ch.base.simplices()[i] for i in s)}
                if Xv & Xw:
                    direct.add((v, w))
        assert mirror_pattern(ch) == direct == set(T.edges)
        assert all(not X.is_empty for X in ch.mirrors)


# -- attach regions and certificates ----------------------------------------------

def test_attach_region_generator(pent_chamber):
    G = pent_chamber.nerve
    reg = attach_region(pent_chamber, reduce("v2", G))
    assert reg.region.simplex_set == pent_chamber.mirrors[2].simplex_set
    assert reg.certificate.status == "verified"


def test_attach_region_adjacent_pair(pent_chamber):
    G = pent_chamber.nerve
    reg = attach_region(pent_chamber, reduce("v0 v1", G))
    assert reg.descents == (0, 1)
    assert reg.region.dimension == 1
    assert len(reg.region.simplices(0)) == 5
    assert homology(reg.region) == HomologyProfile.point()
    assert reg.certificate.status == "verified"


def test_attach_region_identity_rejected(pent_chamber):
    with pytest.raises(ValueError):
        attach_region(pent_chamber, identity(pent_chamber.nerve))


def test_pentagon_regions_are_arcs(pent_chamber):
    for w in enumerate_ball(pent_chamber.nerve, 4)[1:]:
        cert = attach_region(pent_chamber, w).certificate
        assert cert.status == "verified"
        assert cert.frontier_profile == HomologyProfile.sphere(0)


def test_whole_cycle_region_fails(pent_chamber):
    R = Subcomplex(pent_chamber.sd, pent_chamber.sd.simplex_set)
    cert = disk_certificate(R)
    assert cert.status == "failed"
    assert not cert.checks["euler_one"]


def test_two_arcs_region_fails(pent_chamber):
    R = Subcomplex(pent_chamber.sd, pent_chamber.mirrors[0].simplex_set | pent_chamber.mirrors[2].simplex_set)
    assert disk_certificate(R).status == "failed"


def test_empty_region_fails(pent_chamber):
    assert disk_certificate(Subcomplex(pent_chamber.sd, frozenset())).status == "failed"


def test_point_region():
    ch = build_chamber(single_vertex())
    reg = attach_region(ch, reduce("a", ch.nerve))
    assert reg.certificate.status == "verified"


def test_sphere_base_regions_have_circle_frontier():
    ch = build_chamber(icosahedron())
    rng = random.Random(1)
    ball = enumerate_ball(ch.nerve, 3)[1:]
    for w in rng.sample(ball, 25):
        cert = attach_region(ch, w).certificate
        assert cert.status == "verified"
        assert cert.frontier_profile == HomologyProfile.sphere(1)


def test_three_dimensional_region_inconclusive():
    ch = build_chamber(simplex_boundary(4))
    cert = attach_region(ch, reduce("v0", ch.nerve)).certificate
    assert cert.status == "inconclusive"
    assert all(cert.checks.values())


# -- truncations ------------------------------------------------------------------

def test_one_tile():
    tc = build_truncation(PENT, 1)
    assert tc.euler_characteristic() == 1
    assert tc.adjacency == []


def test_two_tiles_glued_along_one_mirror(pent_chamber):
    tc = build_truncation(pent_chamber, 2)
    shared = tc.tile_cells[0] & tc.tile_cells[1]
    assert len(shared) == 5  # the arc X_v0: 3 vertices and 2 edges
    assert {s for _, s in shared} == pent_chamber.mirrors[0].simplex_set
    assert tc.adjacency == [(0, 1, "v0")]
    assert tc.euler_characteristic() == 1


def test_pentagon_ten_tiles_simply_connected_homology():
    tc = build_truncation(PENT, 10)
    for k in range(1, 11):
        assert tc.homology(k) == HomologyProfile.point()


def test_truncation_report_pentagon():
    rep = truncation_report(build_truncation(PENT, 30))
    assert rep["adjacency_connected"] and rep["signs_alternate"]
    assert rep["adjacency_matches_cells"] and rep["attach_regions_match_descents"]
    assert rep["disk_certificates"] == {"verified": 29}
    assert rep["euler_prefixes"] == [1] * 30


def test_adjacency_count_matches_descents():
    tc = build_truncation(PENT, 40)
    where = {w.letters: i for i, w in enumerate(tc.words)}
    pairs = sum(1 for w in tc.words for v in w.descents if (w * reduce([f"v{v}"], w.nerve)).letters in where)
    assert len(tc.adjacency) == pairs


def test_euler_formula_generic_base():
    # chi(P_n) = n chi(chamber) - sum chi(attach regions)
    tc = build_truncation(icosahedron(), 12)
    total = 0
    for k in range(tc.n_tiles):
        if k:
            total -= homology(assembled_intersection(tc, k)).euler_characteristic
        total += 1
        assert tc.euler_characteristic(k + 1) == total == 1


def test_truncation_guards():
    with pytest.raises(GuardExceeded):
        build_truncation(PENT, 100, max_tiles=50)
    with pytest.raises(GuardExceeded):
        build_truncation(PENT, 10, max_cells=50)


def test_finite_group_truncation_caps():
    tc = build_truncation(single_edge(), 10)
    assert tc.n_tiles == 4
    assert tc.homology() == HomologyProfile.point()


# -- euler characteristics and quotients ------------------------------------------

def test_orbifold_euler_values():
    assert orbifold_euler(build_chamber(PENT)) == Fraction(1) - Fraction(5, 2) + Fraction(5, 4)
    assert quotient_euler(build_chamber(PENT)) == -8
    assert orbifold_euler(build_chamber(cycle(4))) == 0
    assert orbifold_euler(build_chamber(single_vertex())) == Fraction(1, 2)
    assert quotient_euler(build_chamber(single_vertex())) == 1


def _cell_stabilizer_sum(T):
    # independent count straight from the poset of T: a chain of simplices
    # of T has stabilizer order 2^{|smallest simplex|}; cone cells have none
    simps = T.simplices()
    chains = []

    def grow(chain):
        chains.append(chain)
        for s in simps:
            if len(s) > len(chain[-1]) and set(chain[-1]) <= set(s):
                grow(chain + [s])

    for s in simps:
        grow([s])
    total = Fraction(1)  # apex
    for c in chains:
        d = len(c) - 1
        total += Fraction((-1) ** d, 2 ** len(c[0]))  # chain in sd(T)
        total += Fraction((-1) ** (d + 1), 1)  # its cone
    return total


@pytest.mark.parametrize("T", [PENT, cycle(4), cycle(6), icosahedron(), single_edge(), two_points()],
                         ids=["pentagon", "square", "hexagon", "icosahedron", "edge", "two-points"])
def test_orbifold_euler_oracle(T):
    assert orbifold_euler(build_chamber(T)) == _cell_stabilizer_sum(T)


def test_pentagon_quotient():
    q = build_quotient_complex(PENT)
    assert q.n_chambers == 32
    assert q.euler == -8 == q.expected_euler
    assert q.profile == HomologyProfile((1, 10, 1))


def test_square_quotient_is_torus():
    q = build_quotient_complex(cycle(4))
    assert q.n_chambers == 16
    assert q.euler == 0
    assert q.profile == HomologyProfile.torus()


def test_two_points_quotient_is_circle():
    q = build_quotient_complex(two_points())
    assert q.euler == 0
    assert q.profile == HomologyProfile.sphere(1)


def test_single_edge_quotient_is_disk():
    # W is finite here, so the commutator subgroup is trivial and the
    # quotient is the whole four-chamber Davis complex: a disk
    q = build_quotient_complex(single_edge())
    assert q.n_chambers == 4
    assert q.euler == 1 == q.expected_euler
    assert q.profile == HomologyProfile.point()


def test_quotient_guard():
    with pytest.raises(GuardExceeded):
        build_quotient_complex(PENT, max_cells=100)


def test_quotient_parity():
    G = NerveGraph.from_complex(PENT)
    assert quotient_parity(reduce("v0 v2 v0", G)) == (0, 0, 1, 0, 0)


# -- H1 injectivity -------------------------------------------------------------------

def test_h1_injective_pentagon():
    assert h1_injectivity_check(PENT, 10)


def test_h1_injective_trivial_for_cone_chambers():
    tc = build_truncation(icosahedron(), 8)
    assert all(h1_injectivity(tc))


def test_misglued_negative_control():
    tc = misglued_pentagon()
    assert [tc.homology(k).rank(1) for k in (1, 2, 3)] == [0, 1, 0]
    assert h1_injectivity(tc) == [True, False]
    assert not h1_injectivity_check(tc, 3)


# -- exports ----------------------------------------------------------------------------

def test_exports():
    tc = build_truncation(PENT, 6)
    data = tc.to_json()
    assert data["nodes"][0] == {"index": 0, "normal_form": "", "length": 0, "sign": 1}
    assert {e["mirror"] for e in data["edges"]} == {"v0", "v1", "v2", "v3", "v4"}
    dot = tc.to_dot()
    assert dot.startswith("graph tiles {") and dot.count("--") == len(tc.adjacency)
    bj = boundary_json(tc.complex)
    assert [len(c) for c in bj["cells"]] == [tc.complex.count(k) for k in range(3)]
    json.dumps(bj)
