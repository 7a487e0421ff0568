"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -v -s`` or in
the terminal summary) and then re-raises any failure.
"""
import time
from fractions import Fraction
from functools import lru_cache
from itertools import product

import pytest

from heckezeta.algebra import ONE, Q, QHALF, OrbitPolynomial, ga_exact_divide
from heckezeta.cosets import case_mixed_tables, gln_mixed_degree, gln_mixed_table, hecke_cells
from heckezeta.padic import (enumerate_cells, iwasawa_shape, layer_index, locate_classes, model_for,
                             u_orbit_partition)
from heckezeta.presets import get_preset
from heckezeta.satake import (HeckeCombination, TransformTable, forward, hecke_polynomial, macdonald,
                              minuscule_satake_poly, modq_check, naive_inverse, orbit_sum, qpow,
                              satake_inverse, satake_poly_from_config, shifted)
from heckezeta.schwartz import (box, frakh1, gsp4_zeta_verdict, h0_action, h_tau1_action, hecke_act,
                                phi_bar, psi_direct, trace, trace_check, trace_preimage)
from heckezeta.zeta import DETERMINANT_PRODUCT, class_degrees, zeta_verdict

def e(lam, c=1):
    return OrbitPolynomial.monomial(lam, c)


@lru_cache(maxsize=None)
def cosets(name, lam, p):
    return enumerate_cells(model_for(name, p), lam)


# 1
def criterion_gl2_golden():
    gl2 = get_preset("gl2")
    assert macdonald(gl2, (1, 0)) == e((1, 0), QHALF) + e((0, 1), QHALF)
    assert macdonald(gl2, (2, 0)) == e((2, 0), Q) + e((0, 2), Q) + e((1, 1), Q - ONE)


# 2
def criterion_gln_standard():
    for n in (2, 4, 6):
        preset = get_preset("gln", n)
        table = TransformTable(preset)
        poly = minuscule_satake_poly(preset, (0, 1) + (0,) * (n - 1))
        for c in (1, 3):
            hp = hecke_polynomial(poly, Fraction(c, 2), table)
            want = [HeckeCombination({(0,) + (1,) * k + (0,) * (n - k):
                                      qpow(Fraction(-k * (n - k + c), 2)) * (-1) ** k})
                    for k in range(n + 1)]
            assert list(hp.coeffs) == want


# 3
def criterion_gsp4_spinor():
    preset = get_preset("gsp4")
    table = TransformTable(preset)
    poly = minuscule_satake_poly(preset, (1, 1, 1))
    for c in (1, 3):
        hp = hecke_polynomial(poly, Fraction(c, 2), table)
        assert list(hp.coeffs) == [
            HeckeCombination({(0, 0, 0): ONE}),
            HeckeCombination({(1, 1, 1): -qpow(Fraction(-(c + 3), 2))}),
            HeckeCombination({(2, 2, 1): qpow(-(c + 2)), (2, 1, 1): qpow(-(c + 2)) * (Q * Q + ONE)}),
            HeckeCombination({(3, 2, 2): -qpow(Fraction(-(3 * c + 3), 2))}),
            HeckeCombination({(4, 2, 2): qpow(-2 * c)}),
        ]


# 4
def gu4_base_change_operators(c):
    om = ONE - Q
    return [
        HeckeCombination({(0, 0, 0): ONE}),
        HeckeCombination({(2, 2, 1): -qpow(-(c + 3)), (2, 1, 1): -qpow(-(c + 3)) * (Q * Q + ONE) * om}),
        HeckeCombination({(4, 3, 3): qpow(-(2 * c + 4)), (4, 3, 2): qpow(-(2 * c + 4)) * om,
                          (4, 2, 2): qpow(-(2 * c + 4)) * (Q * Q + ONE) * (ONE - Q + Q * Q)}),
        HeckeCombination({(6, 4, 3): -qpow(-(3 * c + 3)), (6, 3, 3): -qpow(-(3 * c + 3)) * (Q * Q + ONE) * om}),
        HeckeCombination({(8, 4, 4): qpow(-4 * c)}),
    ]


def criterion_gu4_hecke():
    preset = get_preset("gu4")
    table = TransformTable(preset)
    sbc = satake_poly_from_config(preset)
    for c in (1, 3):
        target = shifted(sbc, c)
        for k, comb in enumerate(gu4_base_change_operators(c)):
            assert forward(comb, table) == target.coeffs[k]
            assert satake_inverse(target.coeffs[k], table) == comb


# 5
def criterion_coset_counts():
    cases = [("gl2", (1, 0), [2, 3, 5], lambda q: q + 1), ("gl2", (2, 0), [2, 3, 5], lambda q: q * (q + 1)),
             ("gsp4", (2, 2, 1), [2, 3], lambda q: q + q ** 2 + q ** 3 + q ** 4),
             ("gu4", (2, 2, 1), [3], lambda q: q + q ** 3 + q ** 4 + q ** 6),
             ("gu4", (4, 3, 3), [3], lambda q: q ** 4 + q ** 5 + q ** 7 + q ** 8)]
    for name, lam, primes, formula in cases:
        total = hecke_cells(get_preset(name), lam).total
        for p in primes:
            assert len(cosets(name, lam, p)) == total.at(p) == formula(p)
    assert hecke_cells(get_preset("gu4"), (4, 3, 3)).total.at(2) == 432
    assert len(cosets("gu4", (4, 3, 3), 3)) == 9072


# 6
def criterion_shape_census():
    for p in (2, 3, 5):
        model = model_for("gl2", p)
        shapes = [iwasawa_shape(model, g) for g in cosets("gl2", (2, 0), p).matrices(p)]
        assert [shapes.count(s) for s in [(0, 2), (1, 1), (2, 0)]] == [1, p - 1, p * p]
    preset = get_preset("gu4")
    model = model_for("gu4", 3)
    census = {}
    for g in cosets("gu4", (4, 3, 3), 3).matrices(3):
        mu = iwasawa_shape(model, g)
        census[mu] = census.get(mu, 0) + 1
    entry = TransformTable(preset).entry((4, 3, 3))
    assert set(census) == set(entry.support())
    for mu, n in census.items():
        assert n == (entry.coeff(mu) * qpow(preset.datum.pair_delta(mu))).at(3)


# 7
def criterion_mixed_orbits():
    model = model_for("gl4", 2)
    assert len(u_orbit_partition(model, cosets("gl4", (0, 1, 1, 0, 0), 2))) == len(gln_mixed_table(2, 2)) == 6
    for name, op, lam, count in [("gsp4", "r", (1, 1, 1), 2), ("gsp4", "w0r2", (2, 2, 1), 3),
                                 ("gu4", "w0r2", (2, 2, 1), 4), ("gu4", "w0w1w0r4", (4, 3, 3), 3)]:
        model = model_for(name, 3)
        orbits = u_orbit_partition(model, cosets(name, lam, 3))
        assert len(orbits) == count
        table = case_mixed_tables(name)[op]
        assert sorted(locate_classes(model, orbits, [(c.lam, c.tau) for c in table])) == list(range(count))


# 8
def criterion_gln_congruences():
    for m in (1, 2, 3):
        for k in range(2 * m + 1):
            for cls in gln_mixed_table(m, k):
                md = gln_mixed_degree(m, cls.kappa, cls.tau)
                assert md.residue == md.binomial
    for n in (4, 6):
        for c in (1, 3):
            v = zeta_verdict(get_preset("gln", n), c)
            assert v.overall
            assert all(cv.residue == 0 for cv in v.classes if cv.residue is not None)
    assert not zeta_verdict(get_preset("gln", 4), 1, DETERMINANT_PRODUCT).overall


# 9
def criterion_phantom_twist():
    c = 1
    h = Fraction(1, 2)
    want = {
        "g_0,0": ONE - qpow(-(c + 3) * h) * (Q + ONE) + qpow(-(c + 2)),
        "g_1,0": qpow(-(c + 2)) - qpow(-(3 * c + 1) * h),
        "g_2,0": qpow(-(c + 2)),
        "g_0,1": (Q + ONE) * (qpow(-(c + 2)) * (Q + ONE) - qpow(-3 * (c + 1) * h) - qpow(-(c + 3) * h)),
        "g_0,2": qpow(-(c + 2)) - qpow(-3 * (c + 1) * h) * (Q + ONE) + qpow(-2 * c),
        "g_1,1": qpow(-(c + 2)) - qpow(-3 * (c + 1) * h),
    }
    got = {cd.label: cd.degree for cd in class_degrees(get_preset("gln", 4), c)}
    assert got == want
    assert all(got[k] == ONE - ONE for k in ("g_0,1", "g_0,2", "g_1,1"))


# 10
def criterion_gu4_zeta():
    model = model_for("gu4", 3)
    assert [layer_index(model, t) for t in range(4)] == [4, 1, 1, 4]
    for c in (1, 3):
        v = zeta_verdict("gu4", c)
        assert v.overall
        res = {cv.label: cv.residue for cv in v.classes}
        assert res["g0"] == 0 and res["g3"] == 0


# 11
def criterion_gsp4_schwartz():
    for p in (2, 3):
        phi = box(0, 0, 0, 0, p)
        pb = lambda *a: phi_bar(*a, p=p)  # noqa: E731
        assert hecke_act((1, 1, 1), phi) == pb(1, 1, 1, 1) + p * (pb(1, 1, 0, 0) + pb(0, 0, 1, 1)) + p * p * phi
        assert hecke_act((2, 2, 1), phi) == pb(2, 2, 1, 1) + (p - 1) * pb(1, 1, 1, 1) + p * p * pb(0, 0, 1, 1)
        assert hecke_act((2, 1, 2), phi) == pb(1, 1, 2, 2) + (p - 1) * pb(1, 1, 1, 1) + p * p * pb(1, 1, 0, 0)
        psi = psi_direct(p)
        assert frakh1(p) == psi
        assert not (h0_action(1, phi).values % (p - 1)).any()
        W = h_tau1_action(p)
        rep = trace_check(psi, W)
        assert rep.passed and rep.max_index == 1
        xi, witness = trace_preimage(psi, W)
        assert witness is None and trace(xi, W) == psi
        assert gsp4_zeta_verdict(1, p).overall


# 12
def criterion_properties():
    names = [("gl2", None), ("gl2-toy", None), ("gsp4", None), ("gu4", None), ("gu4-levi", None),
             ("gln", 4)]
    for name, n in names:
        aff = get_preset(name, n).affine
        for nu in product(range(-3, 4), repeat=aff.datum.rank):
            if sum(map(abs, nu)) <= 3:
                assert aff.length(aff.min_in_right_coset(nu)) == aff.min_length_formula(nu)
    for name, n in [("gl2", None), ("gsp4", None), ("gln", 4)]:
        preset = get_preset(name, n)
        table = TransformTable(preset)
        d = preset.datum
        for lam in product(range(-2, 3), repeat=d.rank):
            if sum(map(abs, lam)) <= 2 and d.is_dominant(lam):
                assert satake_inverse(macdonald(preset, lam), table) == HeckeCombination({lam: ONE})
                f = orbit_sum(d, lam)
                assert modq_check(f, naive_inverse(d, f), table)
    beta = (1, -1)
    den = e((0, 0)) - e(beta)
    for num in [e((0, 0)), e((2, 0), Q) + e((1, 1)), e((3, -1), QHALF)]:
        assert ga_exact_divide(den * num, den) == num


CRITERIA = [
    (1, "GL2 Satake golden values", criterion_gl2_golden),
    (2, "GL_n standard Hecke polynomial", criterion_gln_standard),
    (3, "GSp4 spinor Hecke polynomial", criterion_gsp4_spinor),
    (4, "GU4 base-change Hecke polynomial", criterion_gu4_hecke),
    (5, "coset-count concordance", criterion_coset_counts),
    (6, "shape census", criterion_shape_census),
    (7, "mixed-orbit concordance", criterion_mixed_orbits),
    (8, "GL_n degree congruences and verdicts", criterion_gln_congruences),
    (9, "GL4 twisted class degrees at c = 1", criterion_phantom_twist),
    (10, "GU4 zeta verdict", criterion_gu4_zeta),
    (11, "GSp4 Schwartz suite", criterion_gsp4_schwartz),
    (12, "property suites", criterion_properties),
]


@pytest.mark.parametrize("num, title, check", CRITERIA, ids=[f"criterion{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, title, check, capsys):
    start = time.perf_counter()
    try:
        check()
    except BaseException:
        with capsys.disabled():
            print(f"\ncriterion {num:2d} FAIL  {title} ({time.perf_counter() - start:.1f} s)")
        raise
    with capsys.disabled():
        print(f"\ncriterion {num:2d} PASS  {title} ({time.perf_counter() - start:.1f} s)")
