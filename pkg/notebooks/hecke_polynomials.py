"""
Hecke polynomials and zeta verdicts
===================================

From a minuscule Satake polynomial to a per-class divisibility check.
"""
from fractions import Fraction

from heckezeta.presets import get_preset
from heckezeta.satake import (TransformTable, hecke_polynomial, minuscule_satake_poly,
                              satake_poly_from_config, word_label)
from heckezeta.zeta import DETERMINANT_PRODUCT, zeta_verdict

# spinor Hecke polynomial of GSp4, centred at 1/2
gsp4 = get_preset("gsp4")
hp = hecke_polynomial(minuscule_satake_poly(gsp4, (1, 1, 1)), Fraction(1, 2), TransformTable(gsp4))
for k, comb in enumerate(hp.coeffs):
    print(f"X^{k}:", ", ".join(f"{coeff} [{word_label(gsp4, lam)}]" for lam, coeff in comb.items()))

# GU4 is not split, so its transform table starts from recorded constants and fills in by central shifts
gu4 = get_preset("gu4")
hp = hecke_polynomial(satake_poly_from_config(gu4), 1, TransformTable(gu4))
print(hp.coeffs[2])

# Class degrees, layer indices and residues
for cv in zeta_verdict("gu4", 1).classes:
    print(cv.label, cv.degree, cv.layer, cv.residue, cv.passed)

# GL4 passes with the anticyclotomic character and fails with the product of determinants
print(zeta_verdict(get_preset("gln", 4), 1).overall)
print(zeta_verdict(get_preset("gln", 4), 1, DETERMINANT_PRODUCT).overall)
