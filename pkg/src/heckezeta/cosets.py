"""Double coset decompositions.

``bn_cells`` splits K_X w K_Y / K_Y into Schubert cells, one per minimal
representative tau of W_X / (W_X cap w W_Y w^-1); the cell of tau has
q^{d(tau w)} elements. The GL_n helpers describe the same cells through
Schubert symbols, and the mixed tables list the U-orbits on K w K / K for the
subgroup U = H cap K of the block Levi H.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Sequence

from .algebra import Q, HalfPowerLaurent, gaussian_binomial
from .errors import NotReduced
from .presets import Preset, get_preset
from .weyl import ExtAffineElement, ReducedWord


@dataclass
class CosetCell:
    word: ReducedWord  # reduced word of tau * w
    size_exp: int
    tau: ReducedWord

    @property
    def size(self) -> HalfPowerLaurent:
        return Q ** self.size_exp

    def to_json(self) -> dict:
        return {"word": str(self.word), "sizeExp": self.size_exp, "tau": str(self.tau)}


@dataclass
class CellDecomposition:
    cells: list[CosetCell]

    @property
    def total(self) -> HalfPowerLaurent:
        out = HalfPowerLaurent()
        for c in self.cells:
            out = out + c.size
        return out

    def to_json(self) -> dict:
        return {"cells": [c.to_json() for c in self.cells], "total": str(self.total)}


def finite_simple_names(preset: Preset) -> list[str]:
    return [s for s in preset.affine.order if not s.startswith("w0")]


def is_double_reduced(preset: Preset, X: Sequence[str], Y: Sequence[str], w: ExtAffineElement) -> bool:
    """w is minimal in W_X w W_Y iff no s in X is a left descent and no s in Y a right descent."""
    aff = preset.affine
    ell = aff.length(w)
    if any(aff.length(aff.generators[s] * w) < ell for s in X):
        return False
    return not any(aff.length(w * aff.generators[s]) < ell for s in Y)


def bn_cells(preset: Preset, X: Sequence[str], Y: Sequence[str], w: ExtAffineElement) -> CellDecomposition:
    aff = preset.affine
    if not is_double_reduced(preset, X, Y, w):
        raise NotReduced("w is not the minimal representative of W_X w W_Y")
    wx = aff.generate(X)
    w_inv = w.inverse()
    conj = {w * y * w_inv for y in aff.generate(Y)}
    inter = [x for x in wx if x in conj]
    seen = set()
    cells = []
    for x in sorted(wx, key=lambda e: (aff.length(e), wx[e])):
        if x in seen:
            continue
        seen.update(x * h for h in inter)
        tau = aff.reduced_word(x)
        word = aff.reduced_word(x * w)
        cells.append(CosetCell(word, aff.size_exponent(word), tau))
    return CellDecomposition(cells)


def hecke_cells(preset: Preset, lam: Sequence[int]) -> CellDecomposition:
    """Cells of K varpi^lam K / K for dominant lam."""
    names = finite_simple_names(preset)
    w = preset.affine.min_rep(lam).element
    return bn_cells(preset, names, names, w)


@dataclass(frozen=True)
class SchubertSymbol:
    entries: tuple[int, ...]

    @property
    def dimension(self) -> int:
        k = len(self.entries)
        return sum(self.entries) - comb(k + 1, 2)

    def __str__(self):
        return "{" + ",".join(map(str, self.entries)) + "}"


def schubert_symbols(n: int, k: int) -> list[SchubertSymbol]:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return [SchubertSymbol(c) for c in combinations(range(1, n + 1), k)]


def gln_minuscule_total(n: int, k: int) -> HalfPowerLaurent:
    out = HalfPowerLaurent()
    for s in schubert_symbols(n, k):
        out = out + Q ** s.dimension
    return out


def gln_minuscule_coweight(n: int, k: int) -> tuple[int, ...]:
    """f_1 + ... + f_k, with a zero similitude coordinate in front."""
    return (0,) + (1,) * k + (0,) * (n - k)


# mixed classes

@dataclass
class MixedClass:
    lam: tuple[int, ...]
    tau: int
    kappa: tuple[int, int] | None = None
    degree: HalfPowerLaurent | None = None
    layer: HalfPowerLaurent | None = None

    def label(self) -> str:
        core = "varpi^(" + ",".join(map(str, self.lam)) + ")"
        return core if self.tau == 0 else f"{core} tau{self.tau}"

    def to_json(self) -> dict:
        out = {"lambda": list(self.lam), "tauIndex": self.tau}
        if self.kappa is not None:
            out["kappa"] = list(self.kappa)
        if self.degree is not None:
            out["degree"] = str(self.degree)
        if self.layer is not None:
            out["dAlpha"] = str(self.layer)
        return out


MixedClassTable = dict  # operator label -> list[MixedClass]


def mixed_kappas(m: int, k: int) -> list[tuple[int, int]]:
    """P_k: pairs (k1, k2) with k1 + k2 = k and both at most m."""
    return [(k1, k - k1) for k1 in range(max(0, k - m), min(k, m) + 1)]


def kappa_level(m: int, kappa: tuple[int, int]) -> int:
    k1, k2 = kappa
    return min(k1, m - k2)


def kappa_coweight(m: int, kappa: tuple[int, int]) -> tuple[int, ...]:
    """Ones on the first k1 slots of the first block and the last k2 of the second."""
    k1, k2 = kappa
    first = (1,) * k1 + (0,) * (m - k1)
    second = (0,) * (m - k2) + (1,) * k2
    return (0,) + first + second


def gln_mixed_table(m: int, k: int) -> list[MixedClass]:
    if not 0 <= k <= 2 * m:
        raise ValueError("need 0 <= k <= 2m")
    out = []
    for kappa in mixed_kappas(m, k):
        lam = kappa_coweight(m, kappa)
        for i in range(kappa_level(m, kappa) + 1):
            out.append(MixedClass(lam, i, kappa))
    return out


def _mixed_generators(m: int, kappa: tuple[int, int], r: int) -> tuple[list[str], list[str]]:
    # W_{H,r} permutes positions r+1..m and m+r+1..2m; W_{kappa,r} also cuts
    # the first block after k1 and the second before its last k2 slots.
    big = [f"w{i}" for i in range(r + 1, m)] + [f"w{i}" for i in range(m + r + 1, 2 * m)]
    k1, k2 = kappa
    cut = {f"w{k1}", f"w{2 * m - k2}"}
    return big, [s for s in big if s not in cut]


@dataclass
class MixedDegree:
    poly: HalfPowerLaurent
    residue: int
    binomial: int


def gln_mixed_degree(m: int, kappa: tuple[int, int], r: int) -> MixedDegree:
    """Poincare polynomial of [W_{H,r} / W_{kappa,r}] with its value at q = 1."""
    k1, k2 = kappa
    if not 0 <= r <= kappa_level(m, kappa) or k1 > m or k2 > m:
        raise ValueError(f"need 0 <= r <= l(kappa) for kappa={kappa}, r={r}")
    aff = get_preset("gln", 2 * m).affine
    big, small = _mixed_generators(m, kappa, r)
    poly = aff.poincare(aff.parabolic_min_reps(big, small))
    return MixedDegree(poly, int(poly.residue_at(1)), comb(m - r, m - k1) * comb(m - r, k2))


def gln_mixed_degree_closed(m: int, kappa: tuple[int, int], r: int) -> HalfPowerLaurent:
    """Same polynomial as a product of Gaussian binomials."""
    k1, k2 = kappa
    return gaussian_binomial(m - r, k1 - r) * gaussian_binomial(m - r, k2)


# case tables for GU4 and GSp4 (orbit lists established by hand, checked by padic)

_CASE_TABLES = {
    "gu4": {
        "w0r2": [((2, 2, 1), 0), ((2, 1, 2), 0), ((1, 1, 0), 1), ((0, 0, 0), 3)],
        "w0w1w0r4": [((4, 3, 3), 0), ((3, 2, 2), 1), ((2, 1, 1), 2)],
    },
    "gsp4": {
        "r": [((1, 1, 1), 0), ((0, 0, 0), 1)],
        "w0r2": [((2, 2, 1), 0), ((2, 1, 2), 0), ((1, 1, 0), 1)],
    },
}

# Hecke operator labels and the dominant coweight of the double coset
CASE_OPERATORS = {
    "gu4": {"1": (0, 0, 0), "w0r2": (2, 2, 1), "w0w1w0r4": (4, 3, 3)},
    "gsp4": {"1": (0, 0, 0), "r": (1, 1, 1), "w0r2": (2, 2, 1)},
}


def case_mixed_tables(preset: Preset | str) -> MixedClassTable:
    name = preset if isinstance(preset, str) else preset.name
    key = name.lower()
    if key not in _CASE_TABLES:
        raise KeyError(f"no mixed table for {name!r}")
    table = {"1": [MixedClass((0, 0, 0), 0)]}
    for op, rows in _CASE_TABLES[key].items():
        table[op] = [MixedClass(lam, tau) for lam, tau in rows]
    return table


def normalise_operator(word: str) -> str:
    """'w0 r^2', 'w0r2' and 'w0 w1 w0 r^4' all map to the compact table key."""
    return word.replace(" ", "").replace("^", "").replace("rho", "r") or "1"


__all__ = [
    "CosetCell", "CellDecomposition", "bn_cells", "hecke_cells", "is_double_reduced",
    "SchubertSymbol", "schubert_symbols", "gln_minuscule_total", "gln_minuscule_coweight",
    "MixedClass", "mixed_kappas", "kappa_level", "kappa_coweight", "gln_mixed_table",
    "gln_mixed_degree", "gln_mixed_degree_closed", "case_mixed_tables", "CASE_OPERATORS",
]
