"""Frobenius-twisted Hecke polynomials and zeta-element verdicts.

A verdict evaluates the polynomial at Frob, sorts every mixed U-orbit of
every Hecke operator into its H-class alpha, and sums coefficient times
orbit degree per class.  A zeta element exists iff each class degree lies in
d_alpha * O, where d_alpha is the layer index of the class.  Membership in
(q - 1) or (q + 1) is tested by sending q to +1 or -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, Q, HalfPowerLaurent, residue_at
from .cosets import CASE_OPERATORS, case_mixed_tables, gln_mixed_degree, gln_mixed_table
from .errors import MissingEntry, OddHalfPower
from .presets import Preset, get_preset
from .rootdata import vsub
from .satake import (TransformTable, hecke_polynomial, minuscule_satake_poly,
                     satake_poly_from_config)

Q_MINUS_ONE = Q - ONE
Q_PLUS_ONE = Q + ONE

ANTICYCLOTOMIC = "anticyclotomic"  # nu = det h2 / det h1
DETERMINANT_PRODUCT = "product"  # nu = det h1 * det h2


@dataclass(frozen=True)
class TildeTerm:
    coeff: HalfPowerLaurent
    lam: tuple[int, ...]
    frob_exp: int
    x_degree: int

    def to_json(self) -> dict:
        return {"coeff": str(self.coeff), "lambda": list(self.lam),
                "frobExp": self.frob_exp, "xDegree": self.x_degree}


@dataclass
class TildeHecke:
    terms: list[TildeTerm]

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.terms]


def _family(preset: Preset) -> str:
    name = preset.name.lower()
    if name.startswith("gu4"):
        return "gu4"
    if name.startswith("gsp4"):
        return "gsp4"
    if name.startswith("gl"):
        return "gln"
    raise KeyError(f"no zeta setup for preset {preset.name!r}")


def _half_rank(preset: Preset) -> int:
    n = preset.extra.get("n", preset.rank - 1)
    if n % 2:
        raise ValueError("the mixed GL_n setup needs n even")
    return n // 2


def tilde_hecke(preset: Preset, c: int) -> TildeHecke:
    """The Hecke polynomial evaluated at Frob, one term per (coefficient, operator)."""
    fam = _family(preset)
    table = TransformTable(preset)
    if fam == "gln":
        n = 2 * _half_rank(preset)
        poly = minuscule_satake_poly(preset, (0, 1) + (0,) * (n - 1))
        hp = hecke_polynomial(poly, Fraction(c, 2), table)
        frob = True  # Frob = ch(varpi^-1 C): X^k moves the torus part by k
    elif fam == "gu4":
        hp = hecke_polynomial(satake_poly_from_config(preset), c, table)
        frob = False  # Frob = ch(C) is the identity
    else:
        raise KeyError("GSp4 zeta elements go through the Schwartz-space route")
    terms = []
    for k, comb in enumerate(hp.coeffs):
        for lam, coeff in comb.items():
            terms.append(TildeTerm(coeff, lam, k if frob else 0, k))
    return TildeHecke(terms)


# GU4 mixed degrees

GU4_CENTRAL = (2, 1, 1)
GU4_LEVI_ROOTS = ((-1, 2, 0), (-1, 0, 2))
# deg [U varpi^lam tau_1 K]_* for lam modulo the centre and s0 s2
_GU4_TAU1_DEGREES = {(1, 1, 0): Q_PLUS_ONE, (1, 1, 1): Q * Q_PLUS_ONE}


def _levi_cell(n: int) -> HalfPowerLaurent:
    n = abs(n)
    return ONE if n == 0 else Q ** n + Q ** (n - 1)


def _gu4_reduce(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(lam)
    j = lam[0] // 2
    return vsub(lam, tuple(j * x for x in GU4_CENTRAL))


def _gu4_s0s2(lam: Sequence[int]) -> tuple[int, ...]:
    a0, a1, a2 = lam
    return (a0, a0 - a1, a0 - a2)


def gu4_orbit_degree(lam: Sequence[int], tau: int) -> HalfPowerLaurent:
    if tau == 0:
        out = ONE
        for root in GU4_LEVI_ROOTS:
            out = out * _levi_cell(sum(x * y for x, y in zip(lam, root)))
        return out
    red = _gu4_reduce(lam)
    if tau == 1:
        for cand in (red, _gu4_s0s2(red)):
            if cand in _GU4_TAU1_DEGREES:
                return _GU4_TAU1_DEGREES[cand]
        raise MissingEntry(f"no degree recorded for varpi^{lam} tau_1")
    if red == (0, 0, 0):
        # H_{tau_2}, H_{tau_3} lie in U
        return ONE
    raise MissingEntry(f"no degree recorded for varpi^{lam} tau_{tau}")


def _gu4_operator_classes(lam: Sequence[int]):
    """Split K varpi^lam K into U-orbits using the case table and a central shift."""
    table = case_mixed_tables("gu4")
    for op, base in CASE_OPERATORS["gu4"].items():
        shift = vsub(tuple(lam), base)
        if shift[0] % 2 == 0 and shift == tuple(shift[0] // 2 * x for x in GU4_CENTRAL):
            for cls in table[op]:
                yield tuple(a + b for a, b in zip(cls.lam, shift)), cls.tau
            return
    raise MissingEntry(f"no mixed decomposition recorded for K varpi^{tuple(lam)} K")


@dataclass
class ClassDegree:
    key: tuple
    label: str
    degree: HalfPowerLaurent
    tau: int


def class_degrees(preset: Preset, c: int, variant: str = ANTICYCLOTOMIC) -> list[ClassDegree]:
    fam = _family(preset)
    th = tilde_hecke(preset, c)
    acc: dict[tuple, HalfPowerLaurent] = {}
    if fam == "gln":
        m = _half_rank(preset)
        for term in th.terms:
            k = sum(term.lam[1:])
            for cls in gln_mixed_table(m, k):
                k1, k2 = cls.kappa
                nu_exp = k2 - k1 if variant == ANTICYCLOTOMIC else k1 + k2
                key = (cls.tau, -term.frob_exp - nu_exp)
                deg = gln_mixed_degree(m, cls.kappa, cls.tau).poly
                acc[key] = acc.get(key, HalfPowerLaurent()) + term.coeff * deg
        out = []
        for key in sorted(acc):
            i, t = key
            label = f"g_{i},{-t // 2}" if variant == ANTICYCLOTOMIC else f"g_{i}[T^{t}]"
            out.append(ClassDegree(key, label, acc[key], i))
        return out
    for term in th.terms:
        for lam, tau in _gu4_operator_classes(term.lam):
            acc[(tau,)] = acc.get((tau,), HalfPowerLaurent()) + term.coeff * gu4_orbit_degree(lam, tau)
    return [ClassDegree(k, f"g{k[0]}", acc[k], k[0]) for k in sorted(acc)]


def layer_indices(preset: Preset, variant: str = ANTICYCLOTOMIC) -> dict[int, HalfPowerLaurent]:
    """d_alpha by tau index."""
    fam = _family(preset)
    if fam == "gln":
        m = _half_rank(preset)
        out = {i: Q_MINUS_ONE for i in range(m)}
        out[m] = ONE if variant == ANTICYCLOTOMIC else Q_MINUS_ONE
        return out
    if fam == "gu4":
        return {0: Q_PLUS_ONE, 1: ONE, 2: ONE, 3: Q_PLUS_ONE}
    raise KeyError(f"no layer data for {preset.name!r}")


def in_layer_ideal(degree: HalfPowerLaurent, layer: HalfPowerLaurent) -> tuple[bool, int | None]:
    """(deg in d*O, residue used).  d must be 1, q - 1 or q + 1."""
    if layer == ONE:
        return True, None
    if layer == Q_MINUS_ONE:
        if not degree.is_integral_power():
            raise OddHalfPower(f"{degree} has a q^(1/2) term; its class mod q - 1 is undefined")
        r = residue_at(degree, 1)
    elif layer == Q_PLUS_ONE:
        r = residue_at(degree, -1)
    else:
        raise ValueError(f"unsupported layer index {layer}")
    return r == 0, r


@dataclass
class ClassVerdict:
    label: str
    degree: HalfPowerLaurent | None
    layer: HalfPowerLaurent | None
    residue: int | None
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {"class": self.label, "degree": None if self.degree is None else str(self.degree),
               "residue": self.residue, "dAlpha": None if self.layer is None else str(self.layer),
               "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class ZetaVerdict:
    preset: str
    c: int
    classes: list[ClassVerdict]

    @property
    def overall(self) -> bool:
        return all(cv.passed for cv in self.classes)

    def to_json(self) -> dict:
        return {"preset": self.preset, "c": self.c, "classes": [cv.to_json() for cv in self.classes],
                "overall": self.overall}


def zeta_verdict(preset: Preset | str, c: int, variant: str = ANTICYCLOTOMIC) -> ZetaVerdict:
    if isinstance(preset, str):
        preset = get_preset(preset)
    layers = layer_indices(preset, variant)
    out = []
    for cd in class_degrees(preset, c, variant):
        d = layers[cd.tau]
        ok, r = in_layer_ideal(cd.degree, d)
        out.append(ClassVerdict(cd.label, cd.degree, d, r, ok))
    return ZetaVerdict(preset.name, c, out)


__all__ = [
    "TildeTerm", "TildeHecke", "tilde_hecke", "ClassDegree", "class_degrees", "layer_indices",
    "in_layer_ideal", "ClassVerdict", "ZetaVerdict", "zeta_verdict", "gu4_orbit_degree",
    "ANTICYCLOTOMIC", "DETERMINANT_PRODUCT",
]
