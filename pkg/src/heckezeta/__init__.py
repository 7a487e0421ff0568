"""Spherical Hecke algebras, Satake transforms and zeta-element criteria."""
from .algebra import HalfPowerLaurent, OrbitPolynomial, XPolynomial, ga_exact_divide, gaussian_binomial
from .cosets import bn_cells, case_mixed_tables, gln_mixed_degree, gln_mixed_table, hecke_cells
from .errors import HeckeZetaError
from .presets import Preset, get_preset, load_config
from .rootdata import RootDatum, gln_datum
from .satake import (TransformTable, hecke_polynomial, macdonald, minuscule_satake_poly,
                     satake_inverse)
from .zeta import ZetaVerdict, zeta_verdict

__version__ = "0.1.0"

__all__ = [
    "HalfPowerLaurent", "OrbitPolynomial", "XPolynomial", "ga_exact_divide", "gaussian_binomial",
    "bn_cells", "case_mixed_tables", "gln_mixed_degree", "gln_mixed_table", "hecke_cells",
    "HeckeZetaError", "Preset", "get_preset", "load_config", "RootDatum", "gln_datum",
    "TransformTable", "hecke_polynomial", "macdonald", "minuscule_satake_poly", "satake_inverse",
    "ZetaVerdict", "zeta_verdict",
]
