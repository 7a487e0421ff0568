from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.algebra import ONE, Q
from heckezeta.errors import OddHalfPower
from heckezeta.presets import get_preset
from heckezeta.satake import HeckeCombination, TransformTable, hecke_polynomial, minuscule_satake_poly, qpow
from heckezeta.zeta import (ANTICYCLOTOMIC, DETERMINANT_PRODUCT, class_degrees, gu4_orbit_degree,
                            in_layer_ideal, layer_indices, tilde_hecke, zeta_verdict)

ZERO = ONE - ONE


def gl4_twisted_degrees(c):
    """Per-class degree sums for GL_4, keyed by class label."""
    h = Fraction(1, 2)
    return {
        "g_0,0": ONE - qpow(-(c + 3) * h) * (Q + ONE) + qpow(-(c + 2)),
        "g_1,0": qpow(-(c + 2)) - qpow(-(c + 3) * h),
        "g_2,0": qpow(-(c + 2)),
        "g_0,1": (Q + ONE) * (qpow(-(c + 2)) * (Q + ONE) - qpow(-3 * (c + 1) * h) - qpow(-(c + 3) * h)),
        "g_0,2": qpow(-(c + 2)) - qpow(-3 * (c + 1) * h) * (Q + ONE) + qpow(-2 * c),
        "g_1,1": qpow(-(c + 2)) - qpow(-3 * (c + 1) * h),
    }


@pytest.mark.parametrize("c", [1, 3])
def test_gl4_twisted_degrees(c):
    got = {cd.label: cd.degree for cd in class_degrees(get_preset("gln", 4), c)}
    assert got == gl4_twisted_degrees(c)


def test_gl4_vanishing_classes_at_c1():
    got = {cd.label: cd.degree for cd in class_degrees(get_preset("gln", 4), 1)}
    assert [k for k, v in got.items() if v == ZERO] == ["g_0,2", "g_0,1", "g_1,1"]


def test_gl4_g10_exponents_agree_at_c1():
    assert qpow(-(3 * 1 + 1) // 2) == qpow(Fraction(-(1 + 3), 2))


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("c", [1, 3])
def test_gln_verdict_passes(n, c):
    v = zeta_verdict(get_preset("gln", n), c)
    assert v.overall
    m = n // 2
    top = [cv for cv in v.classes if cv.label.startswith(f"g_{m},")]
    assert len(top) == 1 and top[0].layer == ONE


@settings(max_examples=8, deadline=None)
@given(st.sampled_from([2, 4, 6]), st.sampled_from([1, 3, 5, 7]))
def test_gln_lower_classes_vanish_mod_q_minus_one(n, c):
    for cd in class_degrees(get_preset("gln", n), c):
        if cd.tau < n // 2:
            assert cd.degree.residue_at(1) == 0


def test_product_variant_fails():
    v = zeta_verdict(get_preset("gln", 4), 1, DETERMINANT_PRODUCT)
    assert not v.overall
    assert layer_indices(get_preset("gln", 4), DETERMINANT_PRODUCT)[2] == Q - ONE
    bad = {cv.label: cv.residue for cv in v.classes if not cv.passed}
    assert bad["g_2[T^-4]"] == 1


def test_layer_indices():
    assert layer_indices(get_preset("gln", 4), ANTICYCLOTOMIC) == {0: Q - ONE, 1: Q - ONE, 2: ONE}
    assert layer_indices(get_preset("gu4")) == {0: Q + ONE, 1: ONE, 2: ONE, 3: Q + ONE}


@pytest.mark.parametrize("c", [1, 3])
def test_gu4_verdict_passes(c):
    v = zeta_verdict("gu4", c)
    assert v.overall
    assert [cv.label for cv in v.classes] == ["g0", "g1", "g2", "g3"]
    assert [cv.residue for cv in v.classes] == [0, None, None, 0]


def test_gu4_class_degrees_at_c1():
    got = {cd.label: cd.degree for cd in class_degrees(get_preset("gu4"), 1)}
    assert got["g0"] == ONE + qpow(-1) - qpow(-2) - qpow(-3)
    assert got["g3"] == -qpow(-4) - qpow(-5)
    assert got["g2"] == qpow(-6)


def test_gu4_orbit_degrees():
    assert gu4_orbit_degree((4, 3, 3), 0) == Q * Q * (Q + ONE) ** 2
    assert gu4_orbit_degree((2, 2, 1), 0) == Q * Q + Q
    assert gu4_orbit_degree((3, 2, 2), 1) == Q * Q + Q
    assert gu4_orbit_degree((2, 1, 1), 2) == ONE


def test_gu4_frobenius_is_trivial():
    assert {t.frob_exp for t in tilde_hecke(get_preset("gu4"), 1).terms} == {0}


def test_gl2_toy_hecke_polynomial_clears_to_integral_shape():
    preset = get_preset("gl2-toy")
    hp = hecke_polynomial(minuscule_satake_poly(preset, (0, 1, 0)), Fraction(1, 2), TransformTable(preset))
    scaled = [comb * Q for comb in hp.coeffs]
    assert scaled == [HeckeCombination({(0, 0, 0): Q}), HeckeCombination({(0, 1, 0): -ONE}),
                      HeckeCombination({(0, 1, 1): ONE})]


def test_gl2_toy_verdict():
    v = zeta_verdict("gl2-toy", 1)
    assert v.overall
    assert {cv.label: cv.degree for cv in v.classes} == {"g_0,1": ZERO, "g_0,0": ONE - qpow(-1),
                                                          "g_1,0": -qpow(-1)}


def test_layer_ideal_membership():
    assert in_layer_ideal(Q - ONE, Q - ONE) == (True, 0)
    assert in_layer_ideal(Q, Q + ONE) == (False, -1)
    assert in_layer_ideal(Q, ONE) == (True, None)
    with pytest.raises(OddHalfPower):
        in_layer_ideal(qpow(Fraction(1, 2)), Q - ONE)
    with pytest.raises(ValueError):
        in_layer_ideal(Q, Q * Q)


def test_verdict_json_shape():
    js = zeta_verdict("gu4", 1).to_json()
    assert js["overall"] is True
    assert set(js["classes"][0]) == {"class", "degree", "residue", "dAlpha", "pass"}


def test_gsp4_is_routed_elsewhere():
    with pytest.raises(KeyError):
        tilde_hecke(get_preset("gsp4"), 1)
