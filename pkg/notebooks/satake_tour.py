"""
Satake transforms on GL2 and GSp4
=================================

Spherical functions and the coset counts behind them.
"""

from heckezeta.padic import model_for, shape_census
from heckezeta.presets import get_preset
from heckezeta.satake import TransformTable, macdonald, orbit_decomposition, satake_inverse

# Macdonald's formula for the operator of varpi^(2,0) on GL2
gl2 = get_preset("gl2")
f = macdonald(gl2, (2, 0))
print(f)

# grouped into Weyl orbits
for mu, coeff in orbit_decomposition(gl2.datum, f).items():
    print(mu, coeff)

# inverting recovers a single operator
table = TransformTable(gl2)
print(satake_inverse(f, table))

# The coefficient of e^mu counts cosets of shape mu, up to q^<mu, delta>.
# At p = 3: nine cosets of shape (2,0), two of shape (1,1), one of shape (0,2).
print(dict(shape_census(model_for("gl2", 3), (2, 0))))

# GSp4 has half powers of q in the spinor operator
gsp4 = TransformTable(get_preset("gsp4"))
print(gsp4.entry((1, 1, 1)))
