"""Satake transforms with their inverses, and the Hecke polynomials built from them.

Conventions: the transform of a Cartan double coset (K varpi^lam K) is a
W-invariant element of R[Lambda] whose coefficient on e^{W lam} is
q^{<lam, delta>}.  For split presets with trivial parameters the transform is
computed from Macdonald's formula.  Otherwise a table entry is a config
constant or a singleton orbit, and the remaining entries follow by central shifts.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (HalfPowerLaurent, OrbitPolynomial, XPolynomial, ZERO,
                      ga_exact_divide, residue_at)
from .errors import (MissingEntry, NonTermination, NotCentral, NotDominant, NotInvariant,
                     NotMinuscule, NotSplit, OppositionNotMinusOne)
from .presets import Preset
from .rootdata import RootDatum, dot, vadd, vscale


def qpow(e) -> HalfPowerLaurent:
    return HalfPowerLaurent.qpow(Fraction(e))


def orbit_sum(datum: RootDatum, mu: Sequence[int], coeff=1) -> OrbitPolynomial:
    """coeff * e^{W mu}."""
    return OrbitPolynomial({v: coeff for v in datum.orbit(mu)})


def orbit_decomposition(datum: RootDatum, f: OrbitPolynomial) -> dict[tuple, HalfPowerLaurent]:
    """Coefficients c_mu with f = sum c_mu e^{W mu} over dominant mu."""
    check_invariant(datum, f)
    return {mu: c for mu, c in f.items() if datum.is_dominant(mu)}


def check_invariant(datum: RootDatum, f: OrbitPolynomial) -> None:
    for i in datum.simple_indices:
        for lam, c in f.items():
            if f.coeff(datum.reflect(lam, i)) != c:
                raise NotInvariant(f"coefficient of {lam} is not invariant under a simple reflection")


class HeckeCombination:
    """Finite R-linear combination of Cartan double cosets (K varpi^lam K)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for lam, c in (terms or {}).items():
            c = HalfPowerLaurent.coerce(c)
            if c:
                clean[tuple(lam)] = c
        self.terms = clean

    def __add__(self, other: "HeckeCombination") -> "HeckeCombination":
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, ZERO) + c
        return HeckeCombination(out)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, c) -> "HeckeCombination":
        c = HalfPowerLaurent.coerce(c)
        return HeckeCombination({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HeckeCombination):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, lam) -> HalfPowerLaurent:
        return self.terms.get(tuple(lam), ZERO)

    def items(self):
        return sorted(self.terms.items())

    def residues(self, eps: int = 1) -> dict[tuple, int]:
        out = {}
        for lam, c in self.items():
            r = residue_at(c, eps)
            if r:
                out[lam] = r
        return out

    def __repr__(self):
        return "HeckeCombination(" + " + ".join(f"({c})[K{lam}K]" for lam, c in self.items()) + ")"

    def to_json(self) -> list[dict]:
        return [{"lattice": list(lam), "coeff": c.to_json()} for lam, c in self.items()]


def is_split(preset: Preset) -> bool:
    return preset.split and all(d == 1 for d in preset.affine.param_exp.values())


def _weighted_macdonald(datum: RootDatum, lam: Sequence[int], root_params: dict[int, int]) -> OrbitPolynomial:
    """Macdonald's sum with root parameter q^{root_params[alpha]} for each positive root.

    Returns q^{<lam,delta>} / W_lam(q^{-1}) * sum_w w(e^lam prod (1 - q_a^{-1} e^{-a})/(1 - e^{-a})).
    With all parameters 1 this is the split formula; unequal parameters are only used
    by tests as an independent check of non-split table constants.
    """
    lam = tuple(lam)
    weyl = datum.weyl
    pos = datum.positive_indices
    r = datum.rank
    zero = (0,) * r
    one = OrbitPolynomial.monomial(zero)

    numerator = OrbitPolynomial()
    for w in weyl.elements:
        term = OrbitPolynomial.monomial(w.apply(lam))
        shift = zero
        for i in pos:
            wc = w.apply(datum.coroots[i])
            factor = one - OrbitPolynomial.monomial(vscale(-1, wc), qpow(-root_params[i]))
            term = term * factor
            # w(alpha) negative: 1 - e^{-w a} = -e^{-w a}(1 - e^{w a}); move e^{w a} upstairs
            if not _is_positive_coroot(datum, wc):
                shift = vadd(shift, wc)
        sign = -1 if w.length % 2 else 1
        numerator = numerator + term.shift(shift) * sign
    quotient = numerator
    for i in pos:
        quotient = ga_exact_divide(quotient, one - OrbitPolynomial.monomial(vscale(-1, datum.coroots[i])))
    stab = weyl.stabilizer(lam)
    poincare = HalfPowerLaurent()
    for w in stab:
        poincare = poincare + qpow(-sum(root_params[datum.simple_indices[p - 1]] for p in w.word))
    quotient = quotient.map_coeffs(lambda c: c.exact_div(poincare))
    weight = sum(Fraction(root_params[i]) * dot(lam, datum.roots[i]) for i in pos) / 2
    return quotient * qpow(weight)


def _is_positive_coroot(datum: RootDatum, c: Sequence[int]) -> bool:
    for i in datum.positive_indices:
        if datum.coroots[i] == tuple(c):
            return True
    return False


def macdonald(preset: Preset, lam: Sequence[int]) -> OrbitPolynomial:
    """Satake transform of (K varpi^lam K) for a split preset."""
    if not is_split(preset):
        raise NotSplit(f"preset {preset.name} is not split with trivial parameters")
    datum = preset.datum
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return _weighted_macdonald(datum, lam, {i: 1 for i in datum.positive_indices})


class TransformTable:
    """Satake transforms of Cartan double cosets, filled lazily by the allowed rules."""

    def __init__(self, preset: Preset):
        self.preset = preset
        self.datum = preset.datum
        self.entries: dict[tuple, OrbitPolynomial] = {}
        self.sources: dict[tuple, str] = {}
        self.constants: dict[tuple, OrbitPolynomial] = {}
        for key, orbits in preset.extra.get("satakeConstants", {}).items():
            lam = tuple(int(x) for x in key.split(","))
            f = OrbitPolynomial()
            for item in orbits:
                f = f + orbit_sum(self.datum, item["orbit"], HalfPowerLaurent.from_pairs(item["coeff"]))
            self.constants[lam] = f

    def __contains__(self, lam):
        return tuple(lam) in self.entries

    def __getitem__(self, lam) -> OrbitPolynomial:
        return self.entry(lam)

    def leading(self, lam) -> HalfPowerLaurent:
        return qpow(self.datum.pair_delta(lam))

    def entry(self, lam: Sequence[int]) -> OrbitPolynomial:
        lam = tuple(lam)
        if lam in self.entries:
            return self.entries[lam]
        datum = self.datum
        if not datum.is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        if lam in self.constants:
            val, src = self.constants[lam], "constant"
        elif datum.dominant_support(lam) == [lam]:
            val, src = orbit_sum(datum, lam, self.leading(lam)), "singleton"
        elif is_split(self.preset):
            val, src = macdonald(self.preset, lam), "macdonald"
        else:
            val, src = None, None
            for base, const in self.constants.items():
                diff = tuple(a - b for a, b in zip(lam, base))
                if datum.is_central(diff):
                    val, src = central_shift(datum, const, diff), f"shift{base}"
                    break
            if val is None:
                raise MissingEntry(f"no transform available for {lam} in preset {self.preset.name}")
        self.entries[lam] = val
        self.sources[lam] = src
        return val

    def to_json(self) -> dict:
        return {",".join(map(str, k)): v.to_json() for k, v in sorted(self.entries.items())}


def build_table(preset: Preset, budget: Iterable[Sequence[int]]) -> TransformTable:
    table = TransformTable(preset)
    for lam in budget:
        for mu in preset.datum.dominant_support(tuple(lam)):
            table.entry(mu)
    return table


def central_shift(datum: RootDatum, entry: OrbitPolynomial, lam0: Sequence[int]) -> OrbitPolynomial:
    if not datum.is_central(lam0):
        raise NotCentral(f"{tuple(lam0)} pairs nontrivially with a root")
    return entry.shift(lam0)


def _maximal(datum: RootDatum, support: list[tuple]) -> tuple:
    for mu in sorted(support, key=lambda v: (-dot(v, datum.delta_plain), v)):
        if not any(nu != mu and datum.succeq(nu, mu) for nu in support):
            return mu
    raise NonTermination("no maximal orbit found")


def satake_inverse(f: OrbitPolynomial, table: TransformTable) -> HeckeCombination:
    """Triangular elimination: strip maximal dominant orbits until nothing is left."""
    datum = table.datum
    check_invariant(datum, f)
    dom = [mu for mu in f.support() if datum.is_dominant(mu)]
    bound = sum(len(datum.dominant_support(mu)) for mu in dom) + 1
    result: dict[tuple, HalfPowerLaurent] = {}
    rest = f
    steps = 0
    while not rest.is_zero():
        steps += 1
        if steps > bound:
            raise NonTermination("Satake inversion exceeded its iteration bound")
        support = [mu for mu in rest.support() if datum.is_dominant(mu)]
        mu = _maximal(datum, support)
        entry = table.entry(mu)
        c = rest.coeff(mu).exact_div(entry.coeff(mu))
        result[mu] = result.get(mu, ZERO) + c
        rest = rest - entry * c
    return HeckeCombination(result)


def forward(h: HeckeCombination, table: TransformTable) -> OrbitPolynomial:
    out = OrbitPolynomial()
    for lam, c in h.items():
        out = out + table.entry(lam) * c
    return out


def minuscule_satake_poly(preset: Preset, lam: Sequence[int]) -> XPolynomial:
    """prod over mu in W lam of (1 - e^mu X)."""
    datum = preset.datum
    if not is_split(preset):
        raise NotSplit(f"preset {preset.name} is not split")
    lam = tuple(lam)
    if not datum.is_minuscule(lam):
        raise NotMinuscule(f"{lam} is not minuscule")
    zero = (0,) * datum.rank
    poly = XPolynomial([OrbitPolynomial.monomial(zero)])
    for mu in datum.orbit(lam):
        poly = poly * XPolynomial([OrbitPolynomial.monomial(zero), -OrbitPolynomial.monomial(mu)])
    return poly


def satake_poly_from_config(preset: Preset, key: str = "baseChangeSatake") -> XPolynomial:
    """A Satake polynomial given as orbit sums per X-degree in the preset data."""
    coeffs = []
    for items in preset.extra[key]:
        f = OrbitPolynomial()
        for item in items:
            c = item["coeff"]
            c = HalfPowerLaurent.const(c) if isinstance(c, int) else HalfPowerLaurent.from_pairs(c)
            f = f + orbit_sum(preset.datum, item["orbit"], c)
        coeffs.append(f)
    return XPolynomial(coeffs)


def hecke_polynomial(poly: XPolynomial, s, table: TransformTable) -> XPolynomial:
    """Coefficientwise inverse transform of poly(q^{-s} X)."""
    s = Fraction(s)
    return XPolynomial([satake_inverse(c * qpow(-k * s), table) for k, c in enumerate(poly.coeffs)])


def shifted(poly: XPolynomial, s) -> XPolynomial:
    s = Fraction(s)
    return XPolynomial([c * qpow(-k * s) for k, c in enumerate(poly.coeffs)])


def opposition_is_minus_one(datum: RootDatum) -> bool:
    """w_o sends every coroot (hence every root) to its negative."""
    w = datum.weyl.longest
    return all(w.apply(c) == vscale(-1, c) for c in datum.coroots)


def transpose(datum: RootDatum, h: HeckeCombination) -> HeckeCombination:
    if not opposition_is_minus_one(datum):
        raise OppositionNotMinusOne("the longest Weyl element does not act by -1 on roots")
    return HeckeCombination({vscale(-1, datum.opp(lam)): c for lam, c in h.items()})


def modq_check(f: OrbitPolynomial, xi: HeckeCombination, table: TransformTable) -> bool:
    """Compare satake_inverse(f) with xi after q^{1/2} -> 1."""
    return satake_inverse(f, table).residues(1) == xi.residues(1)


def naive_inverse(datum: RootDatum, f: OrbitPolynomial) -> HeckeCombination:
    """sum c_mu (K varpi^mu K) read off from f = sum c_mu e^{W mu}."""
    return HeckeCombination(orbit_decomposition(datum, f))


def word_label(preset: Preset, lam: Sequence[int]) -> str:
    return str(preset.affine.min_rep(lam, "double"))


def hecke_poly_triples(preset: Preset, poly: XPolynomial) -> list[dict]:
    out = []
    for k, comb in enumerate(poly.coeffs):
        for lam, c in comb.items():
            out.append({"degree": k, "lattice": list(lam), "word": word_label(preset, lam),
                        "coeff": c.to_json(), "pretty": str(c)})
    return out
