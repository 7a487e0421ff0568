import pytest

from heckezeta.cosets import case_mixed_tables, gln_mixed_degree, gln_mixed_table, hecke_cells
from heckezeta.errors import CountMismatch
from heckezeta.padic import (LocalMatrix, cartan_type, convolution_count, enumerate_cells,
                             index_compute, iwasawa_shape, locate_classes, membership_and_equality,
                             mixed_degree, model_for, same_coset, shape_census, u_orbit_partition,
                             validate_model)
from heckezeta.presets import get_preset
from heckezeta.satake import TransformTable, qpow
from heckezeta.zeta import gu4_orbit_degree


def gl2_cyclic_sublattices(p, k):
    """Hermite normal forms [[p^a, b], [0, p^(k-a)]] with cyclic quotient of order p^k."""
    from math import gcd
    count = 0
    for a in range(k + 1):
        for b in range(p ** (k - a)):
            d = k - a
            if gcd(gcd(p ** a, b), p ** d) == 1:
                count += 1
    return count


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_gl2_counts_against_hermite_forms(p, k):
    assert len(enumerate_cells(model_for("gl2", p), (k, 0))) == gl2_cyclic_sublattices(p, k)


@pytest.mark.parametrize("name, lam, p, count", [
    ("gsp4", (1, 1, 1), 2, 15), ("gsp4", (1, 1, 1), 3, 40),
    ("gsp4", (2, 2, 1), 2, 30), ("gsp4", (2, 2, 1), 3, 120),
    ("gu4", (2, 2, 1), 3, 840), ("gl4", (0, 1, 1, 0, 0), 2, 35),
])
def test_coset_counts(name, lam, p, count):
    cosets = enumerate_cells(model_for(name, p), lam)
    assert len(cosets) == count == hecke_cells(get_preset(name), lam).total.at(p)


def test_enumerated_cosets_lie_in_the_double_coset_and_are_distinct():
    model = model_for("gsp4", 3)
    mats = enumerate_cells(model, (2, 2, 1)).matrices(3)
    assert {cartan_type(model, g) for g in mats} == {(2, 2, 1)}
    assert len({g.key() for g in mats}) == len(mats)


def test_count_mismatch_is_reported():
    with pytest.raises(CountMismatch):
        enumerate_cells(model_for("gl2", 3), (1, 0), q=2)


@pytest.mark.parametrize("name, lam, p", [
    ("gl2", (2, 0), 3), ("gsp4", (1, 1, 1), 3), ("gsp4", (2, 2, 1), 2), ("gu4", (2, 2, 1), 3),
])
def test_shape_census_matches_satake_transform(name, lam, p):
    preset = get_preset(name)
    census = shape_census(model_for(name, p), lam)
    entry = TransformTable(preset).entry(lam)
    for mu in set(census) | set(entry.support()):
        assert census[mu] == (entry.coeff(mu) * qpow(preset.datum.pair_delta(mu))).at(p)


def test_gl2_census_frozen():
    assert dict(shape_census(model_for("gl2", 3), (2, 0))) == {(2, 0): 9, (1, 1): 2, (0, 2): 1}


@pytest.mark.parametrize("name", ["gl2", "gl4", "gsp4", "gu4"])
def test_models_realise_their_presets(name):
    assert validate_model(model_for(name, 3)) == []


def test_cartan_types_of_class_representatives():
    gu4 = model_for("gu4", 3)
    gsp4 = model_for("gsp4", 3)
    assert cartan_type(gu4, gu4.taus[3]) == (2, 2, 1)
    assert cartan_type(gsp4, gsp4.taus[1]) == (1, 1, 1)
    assert cartan_type(gsp4, gsp4.uniformiser_power((2, 1, 2))) == (2, 2, 1)


def test_iwasawa_shape_of_torus_element():
    model = model_for("gsp4", 3)
    assert iwasawa_shape(model, model.uniformiser_power((2, 1, 0))) == (2, 1, 0)


def test_membership_and_coset_equality():
    model = model_for("gsp4", 3)
    g = model.uniformiser_power((1, 1, 1))
    k = model.generator("w1")
    assert membership_and_equality(model, k) == (True, True)
    assert membership_and_equality(model, g) == (False, False)
    assert same_coset(g * k, g)
    assert not same_coset(g, LocalMatrix.identity(3, 4))
    assert cartan_type(model, k * g) == (1, 1, 1)


def test_identity_round_trips_through_key():
    g = LocalMatrix.identity(5, 4)
    assert LocalMatrix.from_key(5, g.key()) == g


def test_hecke_convolution_on_gl2():
    model = model_for("gl2", 3)
    assert convolution_count(model, (1, 0), (1, 0), (2, 0)) == 1
    assert convolution_count(model, (1, 0), (1, 0), (1, 1)) == 4


@pytest.mark.parametrize("name, lam, p, sizes", [
    ("gsp4", (1, 1, 1), 3, [16, 24]),
    ("gsp4", (2, 2, 1), 3, [12, 12, 96]),
    ("gl4", (0, 1, 1, 0, 0), 2, [1, 1, 6, 9, 9, 9]),
])
def test_u_orbit_partitions(name, lam, p, sizes):
    model = model_for(name, p)
    assert sorted(map(len, u_orbit_partition(model, enumerate_cells(model, lam)))) == sizes


@pytest.mark.parametrize("name, op, lam", [("gsp4", "r", (1, 1, 1)), ("gsp4", "w0r2", (2, 2, 1))])
def test_case_table_classes_are_distinct_orbits(name, op, lam):
    model = model_for(name, 3)
    orbits = u_orbit_partition(model, enumerate_cells(model, lam))
    where = locate_classes(model, orbits, [(c.lam, c.tau) for c in case_mixed_tables(name)[op]])
    assert sorted(where) == list(range(len(orbits)))


@pytest.mark.parametrize("p", [2, 3])
def test_gl4_mixed_degrees_two_routes(p):
    model = model_for("gl4", p)
    for k in range(5):
        for cls in gln_mixed_table(2, k):
            assert mixed_degree(model, cls.lam, cls.tau) == gln_mixed_degree(2, cls.kappa, cls.tau).poly.at(p)


def test_gu4_indices_at_three():
    model = model_for("gu4", 3)
    assert [index_compute(model, (0, 0, 0), t, layer=True) for t in range(4)] == [4, 1, 1, 4]
    assert index_compute(model, (4, 3, 3), 0) == gu4_orbit_degree((4, 3, 3), 0).at(3) == 144
    assert index_compute(model, (3, 2, 2), 1) == gu4_orbit_degree((3, 2, 2), 1).at(3)


@pytest.mark.parametrize("p", [3, 5])
def test_gl4_layer_indices(p):
    model = model_for("gl4", p)
    assert [index_compute(model, None, t, layer=True) for t in range(3)] == [p - 1, p - 1, 1]


def test_unknown_model():
    with pytest.raises(KeyError):
        model_for("e8", 3)
