from itertools import product

import pytest

from heckezeta.algebra import ONE, Q
from heckezeta.presets import get_preset
from heckezeta.weyl import diagram_to_dot, enumerate_weyl, weak_order_diagram


def small_vectors(rank, bound=3):
    for v in product(range(-bound, bound + 1), repeat=rank):
        if sum(map(abs, v)) <= bound:
            yield v


@pytest.mark.parametrize("name, size", [("gl2", 2), ("gu4", 8), ("gsp4", 8), ("gl4", 24)])
def test_weyl_group_orders(name, size):
    assert len(enumerate_weyl(get_preset(name).datum)) == size


def test_identity_has_length_zero():
    aff = get_preset("gsp4").affine
    assert aff.length(aff.identity) == 0


def test_gl2_minimal_element_of_translation_coset():
    aff = get_preset("gl2").affine
    u = aff.min_in_right_coset((5, 0))
    word = aff.reduced_word(u)
    assert aff.length(u) == 4
    assert word.letters == ["w0", "w1", "w0", "w1"]


@pytest.mark.parametrize("name, lam, word, length", [
    ("gsp4", (2, 2, 1), "w0 r^2", 1),
    ("gu4", (4, 3, 3), "w0 w1 w0 r^4", 3),
    ("gsp4", (2, 1, 1), "r^2", 0),
])
def test_double_coset_minimal_words(name, lam, word, length):
    w = get_preset(name).affine.min_rep(lam)
    assert str(w) == word
    assert w.length == length


@pytest.mark.parametrize("name", ["gl2", "gsp4", "gu4", "gl4"])
def test_hyperplane_length_matches_closed_form(name):
    aff = get_preset(name).affine
    for nu in small_vectors(aff.datum.rank):
        u = aff.min_in_right_coset(nu)
        assert aff.length(u) == aff.min_length_formula(nu)
        assert aff.reduced_word(u).length == aff.length(u)


@pytest.mark.parametrize("name, lam", [("gsp4", (2, 2, 1)), ("gu4", (4, 3, 3)), ("gl4", (0, 1, 1, 0, 0))])
def test_min_rep_agrees_with_brute_force(name, lam):
    aff = get_preset(name).affine
    assert aff.min_rep(lam).element == aff.double_coset_min(lam)


def _stabiliser_names(aff, lam):
    return [s for s in aff.order if s != "w0" and not s.startswith("w0_")
            and aff.generators[s].act(lam) == tuple(lam)]


def _finite_names(aff):
    return [s for s in aff.order if not s.startswith("w0")]


def test_gu4_orbit_chain_representatives():
    aff = get_preset("gu4").affine
    reps = aff.parabolic_min_reps(_finite_names(aff), _stabiliser_names(aff, (2, 2, 1)))
    assert sorted(r.length for r in reps) == [0, 1, 2, 3]
    # the short simple reflection carries parameter q^2
    assert aff.poincare(reps) == ONE + Q ** 2 + Q ** 3 + Q ** 5
    assert Q * aff.poincare(reps) == Q + Q ** 3 + Q ** 4 + Q ** 6


def test_equal_subgroup_gives_identity_rep():
    aff = get_preset("gsp4").affine
    names = _finite_names(aff)
    reps = aff.parabolic_min_reps(names, names)
    assert len(reps) == 1 and reps[0].length == 0
    assert aff.poincare(reps) == ONE


def test_gl4_grassmannian_has_six_reps():
    aff = get_preset("gl4").affine
    reps = aff.parabolic_min_reps(_finite_names(aff), _stabiliser_names(aff, (0, 1, 1, 0, 0)))
    assert len(reps) == 6


def test_gl2_full_poincare():
    aff = get_preset("gl2").affine
    assert aff.poincare(aff.parabolic_min_reps(["w1"], [])) == ONE + Q


def test_gsp4_orbit_diagram_is_a_chain():
    d = weak_order_diagram(get_preset("gsp4").datum, (2, 2, 1))
    assert len(d["nodes"]) == 4
    labels = []
    cur = d["source"]
    while cur != d["sink"]:
        (nxt, lab), = [(b, s) for a, b, s in d["edges"] if a == cur]
        labels.append(lab)
        cur = nxt
    assert labels == ["s1", "s2", "s1"]


def test_gl2_orbit_diagram_single_edge():
    d = weak_order_diagram(get_preset("gl2").datum, (1, 0))
    assert d["edges"] == [((0, 1), (1, 0), "s1")]
    assert '"0,1" -> "1,0"' in diagram_to_dot(d)


def test_central_diagram_is_one_node():
    d = weak_order_diagram(get_preset("gsp4").datum, (2, 1, 1))
    assert d["nodes"] == [(2, 1, 1)] and d["edges"] == []


def test_gln_rho_rotates_generators_down():
    aff = get_preset("gl4").affine
    perm = aff.omega_permutation(aff.omega["r"])
    assert perm == {"w0": "w3", "w1": "w0", "w2": "w1", "w3": "w2"}


def test_gsp4_rho_swaps_outer_generators():
    aff = get_preset("gsp4").affine
    assert aff.omega_permutation(aff.omega["r"]) == {"w0": "w2", "w1": "w1", "w2": "w0"}


def test_identity_omega_permutes_nothing():
    aff = get_preset("gsp4").affine
    assert all(aff.omega_conjugate(aff.identity, s) == s for s in aff.order)
