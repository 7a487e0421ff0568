"""Finite-level Schwartz spaces on X = F^2 x F^2 for the GSp4 zeta verdict.

A function at levels (M, N) lives on (p^-M O / p^N O)^4; coordinate index a
in [0, p^(M+N)) stands for a * p^-M. The group H = GL2 x_det GL2 acts on the
right by (u, v).(h1, h2) = (h1^-1 u, h2^-1 v) and on functions by
(h.f)(x) = f(x.h).

Hecke operators push forward covariantly:
[U g V]_* f = sum over gamma in V g^-1 U / U of gamma.f.
In particular [U z U]_* acts through z^-1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cosets import case_mixed_tables, CASE_OPERATORS
from .errors import LevelTooLow, LevelTooSmall, Mismatch, NotInvariant, OddHalfPower
from .padic import LocalMatrix, enumerate_cells, gl_model, unit_generators
from .presets import get_preset
from .satake import TransformTable, hecke_polynomial, minuscule_satake_poly
from .zeta import ClassVerdict, ZetaVerdict

DEFAULT_LOWER = 2  # phi-bar_(2,2,1,1) reaches p^-2
DEFAULT_UPPER = 1
GSP4_CENTRAL = (2, 1, 1)
SWAP = ((0, 1), (1, 0))


def _frac_mod(x: Fraction, p: int, R: int) -> int:
    den = x.denominator
    if den % p == 0:
        raise LevelTooSmall(f"entry {x} is not p-integral")
    return x.numerator * pow(den, -1, R) % R


def _int_matrix(m, p: int, R: int) -> np.ndarray:
    """A p-integral 2x2 matrix (LocalMatrix or nested Fractions) reduced mod R."""
    if isinstance(m, LocalMatrix):
        rows = [[x[0] for x in row] for row in m.fractions()]
    else:
        rows = [[Fraction(x) for x in row] for row in m]
    return np.array([[_frac_mod(x, p, R) for x in row] for row in rows], dtype=np.int64)


def _inverse_2x2(m) -> tuple:
    rows = m.fractions() if isinstance(m, LocalMatrix) else m
    (a, b), (c, d) = [[x[0] if isinstance(x, tuple) else Fraction(x) for x in row] for row in rows]
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


def _conj_swap(m) -> tuple:
    (a, b), (c, d) = m
    return ((d, c), (b, a))


@lru_cache(maxsize=None)
def _plane_map(mat: tuple, R: int) -> np.ndarray:
    """Flat index of mat . (a, b) mod R for every flat (a, b)."""
    a, b = np.divmod(np.arange(R * R, dtype=np.int64), R)
    (m11, m12), (m21, m22) = mat
    return ((m11 * a + m12 * b) % R) * R + (m21 * a + m22 * b) % R


class FiniteSchwartz:
    """Integer-valued function on (p^-M O / p^N O)^4."""

    def __init__(self, p: int, lower: int, upper: int, values: np.ndarray):
        self.p = p
        self.lower = lower
        self.upper = upper
        R = p ** (lower + upper)
        if values.shape != (R,) * 4:
            raise ValueError(f"values must have shape {(R,) * 4}")
        self.values = values

    @property
    def modulus(self) -> int:
        return self.p ** (self.lower + self.upper)

    @classmethod
    def zero(cls, p: int, lower: int = DEFAULT_LOWER, upper: int = DEFAULT_UPPER) -> "FiniteSchwartz":
        R = p ** (lower + upper)
        return cls(p, lower, upper, np.zeros((R,) * 4, dtype=np.int64))

    def same_levels(self, other: "FiniteSchwartz") -> bool:
        return (self.p, self.lower, self.upper) == (other.p, other.lower, other.upper)

    def _check(self, other):
        if not self.same_levels(other):
            raise ValueError("functions live on different finite models")

    def __add__(self, other):
        self._check(other)
        return FiniteSchwartz(self.p, self.lower, self.upper, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return FiniteSchwartz(self.p, self.lower, self.upper, self.values - other.values)

    def __neg__(self):
        return FiniteSchwartz(self.p, self.lower, self.upper, -self.values)

    def __mul__(self, c: int):
        return FiniteSchwartz(self.p, self.lower, self.upper, self.values * int(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FiniteSchwartz) and self.same_levels(other) \
            and np.array_equal(self.values, other.values)

    def pull(self, d1, d2) -> "FiniteSchwartz":
        """x -> f(d1 u, d2 v) for p-integral d1, d2."""
        R = self.modulus
        m1 = tuple(map(tuple, _int_matrix(d1, self.p, R).tolist()))
        m2 = tuple(map(tuple, _int_matrix(d2, self.p, R).tolist()))
        flat = self.values.reshape(R * R, R * R)
        out = flat[np.ix_(_plane_map(m1, R), _plane_map(m2, R))]
        return FiniteSchwartz(self.p, self.lower, self.upper, out.reshape((R,) * 4))

    def act(self, h1, h2) -> "FiniteSchwartz":
        """(h.f)(x) = f(h1^-1 u, h2^-1 v)."""
        return self.pull(_inverse_2x2(h1), _inverse_2x2(h2))

    def index_of(self, point: Sequence) -> tuple[int, ...]:
        R = self.modulus
        scale = Fraction(self.p) ** self.lower
        out = []
        for x in point:
            y = Fraction(x) * scale
            if y.denominator % self.p == 0:
                raise LevelTooSmall(f"{x} lies below p^-{self.lower}")
            out.append(_frac_mod(y, self.p, R))
        return tuple(out)

    def value_at(self, point: Sequence) -> int:
        return int(self.values[self.index_of(point)])

    def support(self) -> np.ndarray:
        return np.argwhere(self.values != 0)

    def to_json(self) -> dict:
        scale = self.p ** self.lower
        pts = [{"point": [f"{int(a)}/{scale}" for a in idx], "value": int(self.values[tuple(idx)])}
               for idx in self.support()]
        return {"p": self.p, "lowerLevel": self.lower, "upperLevel": self.upper, "values": pts}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def box(u: int, v: int, w: int, x: int, p: int, lower: int = DEFAULT_LOWER,
        upper: int = DEFAULT_UPPER) -> FiniteSchwartz:
    """Characteristic function of varpi^u O x varpi^v O x varpi^w O x varpi^x O."""
    for e in (u, v, w, x):
        if not -lower <= e <= upper:
            raise LevelTooSmall(f"box exponent {e} outside [-{lower}, {upper}]")
    R = p ** (lower + upper)
    idx = np.arange(R)
    vals = np.full(R, lower + upper, dtype=np.int64)
    nz = idx[1:]
    v_of = np.zeros(R - 1, dtype=np.int64)
    rest = nz.copy()
    while True:
        hit = rest % p == 0
        if not hit.any():
            break
        v_of += hit
        rest = np.where(hit, rest // p, rest)
    vals[1:] = v_of
    masks = [(vals >= e + lower) for e in (u, v, w, x)]
    out = (masks[0][:, None, None, None] & masks[1][None, :, None, None]
           & masks[2][None, None, :, None] & masks[3][None, None, None, :])
    return FiniteSchwartz(p, lower, upper, out.astype(np.int64))


def phi_bar(u: int, v: int, w: int, x: int, p: int, lower: int = DEFAULT_LOWER,
            upper: int = DEFAULT_UPPER) -> FiniteSchwartz:
    return box(-u, -v, -w, -x, p, lower, upper)


# Hecke actions

@lru_cache(maxsize=None)
def _right_coset_reps(p: int, exps: tuple[int, int]) -> list[tuple]:
    """Representatives of GL2(O) \\ GL2(O) diag(varpi^a, varpi^b) GL2(O), as rational 2x2 tuples."""
    model = gl_model(2, p, similitude=False)
    inv = tuple(sorted((-exps[0], -exps[1]), reverse=True))
    reps = []
    for g in enumerate_cells(model, inv).matrices(p):
        reps.append(_inverse_2x2(g))
    return reps


def _factor_exponents(lam: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    a0, a1, a2 = lam
    return (a1, a0 - a1), (a2, a0 - a2)


def hecke_act(lam: Sequence[int], f: FiniteSchwartz) -> FiniteSchwartz:
    """[U varpi^lam U]_* f, one product of GL2 coset sums per factor."""
    e1, e2 = _factor_exponents(lam)
    out = FiniteSchwartz.zero(f.p, f.lower, f.upper)
    for d1 in _right_coset_reps(f.p, e1):
        for d2 in _right_coset_reps(f.p, e2):
            out = out + f.pull(d1, d2)
    return out


def _jmath_form(lam: Sequence[int]) -> tuple[int, int, int]:
    """Move lam by s0 s2 if needed so that varpi^lam = jmath(diag(varpi^a1, varpi^(a0-a1)))."""
    a0, a1, a2 = lam
    if a2 == a0 - a1:
        return (a0, a1, a2)
    flipped = (a0, a0 - a1, a0 - a2)
    if flipped[2] == a0 - flipped[1]:
        return flipped
    raise ValueError(f"varpi^{tuple(lam)} is not in the image of jmath up to s0 s2")


def restriction_act(lam: Sequence[int], f: FiniteSchwartz) -> FiniteSchwartz:
    """(U varpi^lam H_tau1)_* f for U-invariant f, via the X-circle cosets of jmath(GL2)."""
    a0, a1, _ = _jmath_form(lam)
    out = FiniteSchwartz.zero(f.p, f.lower, f.upper)
    for d in _right_coset_reps(f.p, (a1, a0 - a1)):
        out = out + f.pull(d, _conj_swap(d))
    return out


def psi_direct(p: int, lower: int = DEFAULT_LOWER, upper: int = DEFAULT_UPPER) -> FiniteSchwartz:
    """ch(diag(varpi, varpi)^-1 GL2(O)) pulled back along (u, v) -> [[u1, v2], [u2, v1]]."""
    if lower < 1:
        raise LevelTooSmall("psi needs lower level at least 1")
    R = p ** (lower + upper)
    step = p ** (lower - 1)
    idx = np.arange(R)
    integral = idx % step == 0  # varpi * coordinate is integral
    red = (idx // step) % p  # residue of varpi * coordinate
    u1 = red[:, None, None, None]
    u2 = red[None, :, None, None]
    v1 = red[None, None, :, None]
    v2 = red[None, None, None, :]
    det_unit = (u1 * v1 - v2 * u2) % p != 0
    ok = (integral[:, None, None, None] & integral[None, :, None, None]
          & integral[None, None, :, None] & integral[None, None, None, :]) & det_unit
    return FiniteSchwartz(p, lower, upper, ok.astype(np.int64))


def frakh1(p: int, lower: int = DEFAULT_LOWER, upper: int = DEFAULT_UPPER) -> FiniteSchwartz:
    """q (U H_tau1)_* phi - (U varpi^(1,1,0) H_tau1)_* phi + (U varpi^(2,1,1) H_tau1)_* phi, checked against psi."""
    phi = box(0, 0, 0, 0, p, lower, upper)
    out = p * restriction_act((0, 0, 0), phi) - restriction_act((1, 1, 0), phi) \
        + restriction_act((2, 1, 1), phi)
    psi = psi_direct(p, lower, upper)
    if out != psi:
        bad = np.argwhere(out.values != psi.values)
        raise Mismatch(f"h1' phi differs from psi at {len(bad)} points, first {bad[0].tolist()}")
    return out


# finite group actions and traces

@dataclass
class FiniteAction:
    """A group W acting through generator pairs (h1, h2), with a character onto Z/order.

    V is the kernel of the character; each generator carries its image.
    """

    gens: list[tuple[tuple, tuple]]
    labels: list[int]
    order: int = 1

    def reduced(self, p: int, R: int) -> list[tuple[tuple, tuple]]:
        """Integer matrices of h1^-1 and h2^-1 mod R."""
        out = []
        for h1, h2 in self.gens:
            m1 = tuple(map(tuple, _int_matrix(_inverse_2x2(h1), p, R).tolist()))
            m2 = tuple(map(tuple, _int_matrix(_inverse_2x2(h2), p, R).tolist()))
            out.append((m1, m2))
        return out


def _discrete_log_table(p: int) -> dict[int, int]:
    if p == 2:
        return {1: 0}
    g = unit_generators(p)[0][0]
    return {pow(g, k, p): k for k in range(p - 1)}


def h_tau1_action(p: int) -> FiniteAction:
    """H_tau1 = X-circle J with the character nu mod varpi onto F_p^x = Z/(p - 1).

    X-circle is jmath(GL2(O)); J is generated by (1, k) with k in SL2 and k = 1 mod p.
    """
    logs = _discrete_log_table(p)
    gens, labels = [], []

    def jm(h):
        return (h, _conj_swap(h))

    one = Fraction(1)
    zero = Fraction(0)
    for h in (((one, one), (zero, one)), ((one, zero), (one, one))):
        gens.append(jm(h))
        labels.append(0)
    for g, _ in unit_generators(p):
        gens.append(jm(((Fraction(g), zero), (zero, one))))
        labels.append(logs[g % p])
    ident = ((one, zero), (zero, one))
    pf = Fraction(p)
    tees = [3, 5] if p == 2 else [1 + p]
    level = [((one, pf), (zero, one)), ((one, zero), (pf, one))]
    level += [((Fraction(t), zero), (zero, 1 / Fraction(t))) for t in tees]
    for k in level:
        gens.append((ident, k))
        labels.append(0)
    return FiniteAction(gens, labels, max(p - 1, 1))


def _lift_points(points: np.ndarray, p: int, lower: int, upper: int, extra: int) -> np.ndarray:
    """All level-(upper+extra) points reducing to the given level-upper points."""
    if extra == 0:
        return points
    R_old = p ** (lower + upper)
    k = p ** extra
    shifts = np.stack(np.meshgrid(*[np.arange(k)] * 4, indexing="ij"), axis=-1).reshape(-1, 4)
    return (points[:, None, :] + R_old * shifts[None, :, :]).reshape(-1, 4)


def _encode(points: np.ndarray, R: int) -> np.ndarray:
    u1, u2, v1, v2 = points.T
    return ((u1 * R + u2) * R + v1) * R + v2


def _apply_gen(points: np.ndarray, gen, R: int) -> np.ndarray:
    (a, b), (c, d) = gen[0]
    (e, f), (g, h) = gen[1]
    u1, u2, v1, v2 = points.T
    return np.stack([(a * u1 + b * u2) % R, (c * u1 + d * u2) % R,
                     (e * v1 + f * v2) % R, (g * v1 + h * v2) % R], axis=1)


def _labelled_components(points: np.ndarray, W: FiniteAction, p: int, R: int):
    """Component ids of (point, label) under the W-action; rows follow `points`."""
    codes = _encode(points, R)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    n, d = len(points), W.order
    rows, cols = [], []
    base = np.arange(n)
    for gen, lab in zip(W.reduced(p, R), W.labels):
        img = _encode(_apply_gen(points, gen, R), R)
        pos = np.searchsorted(sorted_codes, img)
        pos = np.minimum(pos, n - 1)
        if not np.array_equal(sorted_codes[pos], img):
            raise NotInvariant("the point set is not stable under the acting group")
        target = order[pos]
        for c in range(d):
            rows.append(base * d + c)
            cols.append(target * d + (c + lab) % d)
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n * d, n * d))
    _, comp = connected_components(graph, directed=True, connection="weak")
    return comp.reshape(n, d)


def _stabilizer_indices_at(points: np.ndarray, W: FiniteAction, p: int, R: int) -> np.ndarray:
    comp = _labelled_components(points, W, p, R)
    return (comp == comp[:, :1]).sum(axis=1)


def _orbit_closure_points(start: np.ndarray, W: FiniteAction, p: int, R: int) -> np.ndarray:
    gens = W.reduced(p, R)
    seen = np.unique(_encode(start, R))
    frontier = start
    while len(frontier):
        new = np.concatenate([_apply_gen(frontier, g, R) for g in gens])
        codes = _encode(new, R)
        fresh, first = np.unique(codes, return_index=True)
        keep = ~np.isin(fresh, seen)
        frontier = new[first[keep]]
        seen = np.union1d(seen, fresh[keep])
    return np.stack(np.unravel_index(seen, (R,) * 4), axis=1).astype(np.int64)


def stabilizer_index(x: Sequence[int], W: FiniteAction, p: int, lower: int = DEFAULT_LOWER,
                     upper: int = DEFAULT_UPPER, guard: bool = True) -> int:
    """[V_x : V] for the point with coordinate indices x, with a level upper + 1 re-check."""
    R = p ** (lower + upper)
    orbit = _orbit_closure_points(np.array([x], dtype=np.int64), W, p, R)
    idx = int(_stabilizer_indices_at(orbit, W, p, R)[np.searchsorted(_encode(orbit, R),
                                                                      _encode(np.array([x]), R))[0]])
    if guard:
        R1 = p * R
        orbit1 = _orbit_closure_points(np.array([x], dtype=np.int64), W, p, R1)
        pos = np.searchsorted(_encode(orbit1, R1), _encode(np.array([x]), R1))[0]
        idx1 = int(_stabilizer_indices_at(orbit1, W, p, R1)[pos])
        if idx1 != idx:
            raise LevelTooLow(f"stabilizer index changes from {idx} to {idx1} at the next level")
    return idx


def check_invariant(f: FiniteSchwartz, W: FiniteAction) -> None:
    for h1, h2 in W.gens:
        if f.act(h1, h2) != f:
            raise NotInvariant("function is not invariant under the acting group")


@dataclass
class TraceReport:
    passed: bool
    points: int
    max_index: int
    witness: tuple | None = None


def trace_check(phi: FiniteSchwartz, W: FiniteAction, V: FiniteAction | None = None,
                guard: bool = True) -> TraceReport:
    """phi(x) in [V_x : V] Z at every support point (V = kernel of W's character).

    `points` counts the support points whose value is not already a multiple of [W : V].
    """
    _check_kernel(W, V)
    check_invariant(phi, W)
    pts = phi.support()
    if len(pts) == 0:
        return TraceReport(True, 0, 1)
    R = phi.modulus
    vals = phi.values[tuple(pts.T)]
    # [V_x : V] divides [W : V], so multiples of the order never need the index
    pts = pts[vals % W.order != 0]
    vals = vals[vals % W.order != 0]
    if len(pts) == 0:
        return TraceReport(True, 0, 1)
    idx = _stabilizer_indices_at(pts, W, phi.p, R)
    if guard:
        lifted = _lift_points(pts, phi.p, phi.lower, phi.upper, 1)
        idx1 = _stabilizer_indices_at(lifted, W, phi.p, R * phi.p).reshape(len(pts), -1)
        if not (idx1 == idx[:, None]).all():
            raise LevelTooLow("stabilizer indices change at the next level")
    bad = np.nonzero(vals % idx)[0]
    if len(bad):
        return TraceReport(False, len(pts), int(idx.max()), tuple(int(a) for a in pts[bad[0]]))
    return TraceReport(True, len(pts), int(idx.max()))


def _check_kernel(W: FiniteAction, V: FiniteAction | None) -> None:
    if V is None:
        return
    lab = dict(zip(map(repr, W.gens), W.labels))
    for g in V.gens:
        if lab.get(repr(g), 0) % W.order:
            raise NotInvariant("V is not inside the kernel of W's character")


def _coset_words(W: FiniteAction) -> list[list[int]]:
    """A generator word for each class of W / V."""
    words = {0: []}
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for i, lab in enumerate(W.labels):
                c2 = (c + lab) % W.order
                if c2 not in words:
                    words[c2] = words[c] + [i]
                    nxt.append(c2)
        frontier = nxt
    if len(words) != W.order:
        raise NotInvariant("generator labels do not reach every class of W / V")
    return [words[c] for c in range(W.order)]


def trace(xi: FiniteSchwartz, W: FiniteAction) -> FiniteSchwartz:
    """Sum over W / V of gamma.xi."""
    out = FiniteSchwartz.zero(xi.p, xi.lower, xi.upper)
    for word in _coset_words(W):
        g = xi
        # (g1 g2).xi = g1.(g2.xi)
        for i in reversed(word):
            h1, h2 = W.gens[i]
            g = g.act(h1, h2)
        out = out + g
    return out


def trace_preimage(phi: FiniteSchwartz, W: FiniteAction, V: FiniteAction | None = None):
    """(xi, None) with trace(xi) = phi and xi V-invariant, or (None, witness point)."""
    _check_kernel(W, V)
    check_invariant(phi, W)
    pts = phi.support()
    xi = FiniteSchwartz.zero(phi.p, phi.lower, phi.upper)
    if len(pts) == 0:
        return xi, None
    comp = _labelled_components(pts, W, phi.p, phi.modulus)
    idx = (comp == comp[:, :1]).sum(axis=1)
    vals = phi.values[tuple(pts.T)]
    # one W-orbit per set of labelled components; pick a base point in each
    orbit_of = {}
    for row in range(len(pts)):
        key = frozenset(comp[row].tolist())
        orbit_of.setdefault(key, row)
    for key, base in orbit_of.items():
        if vals[base] % W.order == 0:
            sel = pts[np.isin(comp[:, 0], list(key))]
            xi.values[tuple(sel.T)] = vals[base] // W.order
            continue
        if vals[base] % idx[base]:
            return None, tuple(int(a) for a in pts[base])
        level_set = comp[:, 0] == comp[base, 0]  # the V-orbit of the base point
        sel = pts[level_set]
        xi.values[tuple(sel.T)] = vals[base] // idx[base]
    if trace(xi, W) != phi:
        raise Mismatch("trace of the constructed preimage does not reproduce phi")
    return xi, None


# the GSp4 verdict

def gsp4_restrictions(c: int) -> dict[int, list[tuple[int, tuple[int, ...]]]]:
    """Twisted restrictions mod q - 1 as lists of (coefficient, lambda) per tau index."""
    preset = get_preset("gsp4")
    poly = minuscule_satake_poly(preset, (1, 1, 1))
    hp = hecke_polynomial(poly, Fraction(c, 2), TransformTable(preset))
    tables = case_mixed_tables("gsp4")
    by_base = {lam: op for op, lam in CASE_OPERATORS["gsp4"].items()}
    out: dict[int, dict[tuple, int]] = {0: {}, 1: {}}
    for comb in hp.coeffs:
        for lam, coeff in comb.items():
            if not coeff.is_integral_power():
                raise OddHalfPower(f"coefficient {coeff} of K varpi^{lam} K is not in Z[q^-1]")
            r = int(coeff.residue_at(1))
            j, base = _split_central(lam, by_base)
            for cls in tables[by_base[base]]:
                shifted = tuple(a + j * z for a, z in zip(cls.lam, GSP4_CENTRAL))
                acc = out[cls.tau]
                acc[shifted] = acc.get(shifted, 0) + r
    return {t: sorted((v, k) for k, v in acc.items() if v) for t, acc in out.items()}


def _split_central(lam, by_base) -> tuple[int, tuple]:
    for base in by_base:
        diff = [a - b for a, b in zip(lam, base)]
        if diff[0] % 2 == 0:
            j = diff[0] // 2
            if tuple(diff) == tuple(j * z for z in GSP4_CENTRAL):
                return j, base
    raise KeyError(f"no mixed decomposition for K varpi^{tuple(lam)} K")


def h0_action(c: int, phi: FiniteSchwartz) -> FiniteSchwartz:
    out = FiniteSchwartz.zero(phi.p, phi.lower, phi.upper)
    for r, lam in gsp4_restrictions(c)[0]:
        out = out + r * hecke_act(lam, phi)
    return out


def h1_action(c: int, phi: FiniteSchwartz) -> FiniteSchwartz:
    out = FiniteSchwartz.zero(phi.p, phi.lower, phi.upper)
    for r, lam in gsp4_restrictions(c)[1]:
        out = out + r * restriction_act(lam, phi)
    return out


def gsp4_zeta_verdict(c: int, p: int, lower: int = DEFAULT_LOWER, upper: int = DEFAULT_UPPER) -> ZetaVerdict:
    try:
        gsp4_restrictions(c)
    except OddHalfPower as exc:
        note = f"parity: {exc}"
        return ZetaVerdict("gsp4", c, [ClassVerdict("g0", None, None, None, False, note),
                                       ClassVerdict("g1", None, None, None, False, note)])
    phi = box(0, 0, 0, 0, p, lower, upper)
    mod = max(p - 1, 1)
    h0 = h0_action(c, phi)
    bad = int(np.count_nonzero(h0.values % mod))
    g0 = ClassVerdict("g0", None, None, None, bad == 0,
                      f"h0(phi) = 0 mod {mod} at all {h0.values.size} points" if bad == 0
                      else f"h0(phi) not divisible by {mod} at {bad} points")
    psi = frakh1(p, lower, upper)
    W = h_tau1_action(p)
    h1 = h1_action(c, phi)
    report = trace_check(h1, W)
    psi_report = trace_check(psi, W)
    xi, witness = trace_preimage(h1, W)
    ok = report.passed and psi_report.passed and witness is None
    note = (f"h1(phi) meets [V_x:V] divisibility on {report.points} points; "
            f"psi stabilizer indices at most {psi_report.max_index}")
    return ZetaVerdict("gsp4", c, [g0, ClassVerdict("g1", None, None, None, ok, note)])


__all__ = [
    "FiniteSchwartz", "FiniteAction", "TraceReport", "box", "phi_bar", "hecke_act",
    "restriction_act", "psi_direct", "frakh1", "h_tau1_action", "stabilizer_index",
    "trace_check", "trace", "trace_preimage", "gsp4_restrictions", "h0_action",
    "h1_action", "gsp4_zeta_verdict", "check_invariant",
]
