from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from heckezeta.errors import InvalidRootDatum
from heckezeta.presets import get_preset
from heckezeta.rootdata import RootDatum, dot, gln_datum, solve_exact

PRESETS = ["gl2", "gsp4", "gu4", "gl4"]


@pytest.fixture(params=PRESETS)
def datum(request):
    return get_preset(request.param).datum


def test_root_coroot_pairing_is_two(datum):
    for a, c in zip(datum.roots, datum.coroots):
        assert dot(a, c) == 2


def test_reflections_permute_roots(datum):
    roots = set(datum.roots)
    for i in range(len(datum.roots)):
        assert {datum.reflect_character(a, i) for a in roots} == roots


def test_roots_are_signed_combinations_of_simple_roots(datum):
    simple = datum.simple_roots
    for a in datum.roots:
        coeffs = solve_exact(list(simple), a)
        assert coeffs is not None and all(c.denominator == 1 for c in coeffs)
        assert all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)


def test_root_system_is_reduced(datum):
    for a in datum.roots:
        assert tuple(2 * x for x in a) not in datum.roots


def test_gsp4_delta_pairing():
    assert get_preset("gsp4").datum.pair_delta((1, 1, 1)) == Fraction(3, 2)


def test_gu4_delta_pairing_uses_restricted_roots():
    assert get_preset("gu4").datum.pair_delta((2, 2, 1)) == 3


def test_zero_pairs_to_zero(datum):
    assert datum.pair_delta((0,) * datum.rank) == 0


@pytest.mark.parametrize("name, lam, mu, want", [
    ("gl2", (2, 0), (1, 1), True),
    ("gu4", (4, 3, 3), (4, 2, 2), True),
    ("gl2", (1, 0), (0, 0), False),
])
def test_dominance_order(name, lam, mu, want):
    assert get_preset(name).datum.succeq(lam, mu) is want


def test_gsp4_second_reflection_on_spinor_coweight():
    assert get_preset("gsp4").datum.reflect((1, 1, 1), 1) == (1, 1, 0)


@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)), st.integers(0, 7))
def test_reflection_is_an_involution(v, i):
    d = get_preset("gsp4").datum
    assert d.reflect(d.reflect(v, i), i) == v


def test_reflection_fixes_zero(datum):
    assert datum.reflect((0,) * datum.rank, 0) == (0,) * datum.rank


def test_gl2_opposites():
    d = get_preset("gl2").datum
    assert d.opp((1, 0)) == (0, 1)
    assert d.opp((2, 0)) == (0, 2)
    assert d.opp((3, 3)) == (3, 3)


@pytest.mark.parametrize("name, lam, want", [
    ("gl4", (1, 1, 0, 0, 0), True),
    ("gsp4", (1, 1, 1), True),
    ("gl2", (2, 0), False),
])
def test_minuscule_detection(name, lam, want):
    assert get_preset(name).datum.is_minuscule(lam) is want


def test_gu4_dominant_supports():
    d = get_preset("gu4").datum
    assert set(d.dominant_support((2, 2, 1))) == {(2, 2, 1), (2, 1, 1)}
    assert set(d.dominant_support((4, 3, 3))) == {(4, 3, 3), (4, 3, 2), (4, 2, 2)}


def test_minuscule_support_is_a_singleton(datum):
    for lam in product(range(-1, 2), repeat=datum.rank):
        if datum.is_dominant(lam) and datum.is_minuscule(lam):
            assert datum.dominant_support(lam) == [lam]


def test_config_round_trip(datum):
    again = RootDatum.from_config(datum.to_config())
    assert again.roots == datum.roots and again.coroots == datum.coroots


def test_mismatched_coroots_are_rejected():
    d = gln_datum(2, with_similitude=False)
    block = d.to_config()
    block["coroots"] = [[2, -2], [-2, 2]]
    with pytest.raises(InvalidRootDatum):
        RootDatum.from_config(block)
