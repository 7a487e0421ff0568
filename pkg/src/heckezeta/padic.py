"""Concrete p-adic matrix models for checking the combinatorics on actual cosets.

Scalars are Gaussian rationals a + b*xi with xi^2 = -1. For GL_n and GSp4 every
entry has b = 0. GU4 uses E = Q_p(xi) with p = 3 mod 4, so E/F is unramified,
varpi = p stays prime and v(a + b xi) = min(v(a), v(b)).

A matrix is stored as p^-s * A with A integral. The coset gK in G/K is the
lattice g O^n, and lattice equality is equality of K-cosets in every model
here because K is the stabiliser of the standard lattice in G. The key of a
coset is the canonical column Hermite form of that lattice. Because every
quantity comes from exact integer arithmetic mod p^P, with P above the
valuation of the determinant, no coset key ever depends on rounding.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .cosets import hecke_cells
from .errors import (CountMismatch, DuplicateCoset, EmbeddingMismatch, LevelTooLow,
                     NotInvariant, Singular)
from .presets import Preset, get_preset
from .weyl import ExtAffineElement

Gauss = tuple  # (re, im)
XI = (0, 1)


# scalar arithmetic on integer pairs

def _gmul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def _vp(a: int, p: int) -> int:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def _gval(x, p: int) -> int | None:
    a, b = x
    if a == 0 and b == 0:
        return None
    if a == 0:
        return _vp(b, p)
    if b == 0:
        return _vp(a, p)
    return min(_vp(a, p), _vp(b, p))


def _ginv_mod(x, p: int, mod: int):
    a, b = x
    n = pow((a * a + b * b) % mod, -1, mod)
    return (a * n % mod, -b * n % mod)


# Gaussian rationals (pairs of Fractions) for building and exact checks

def _fr(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, tuple):
        return (Fraction(x[0]), Fraction(x[1]))
    return (Fraction(x), Fraction(0))


def _fmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _fsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _finv(x):
    n = x[0] * x[0] + x[1] * x[1]
    if n == 0:
        raise ZeroDivisionError
    return (x[0] / n, -x[1] / n)


def _fconj(x):
    return (x[0], -x[1])


def _frac_val(x: Fraction, p: int) -> int | None:
    if x == 0:
        return None
    return _vp(x.numerator, p) - _vp(x.denominator, p)


def _fval(x, p: int) -> int | None:
    vals = [v for v in (_frac_val(x[0], p), _frac_val(x[1], p)) if v is not None]
    return min(vals) if vals else None


def _fdet(rows) -> tuple[Fraction, Fraction]:
    m = [list(r) for r in rows]
    n = len(m)
    det = (Fraction(1), Fraction(0))
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != (0, 0)), None)
        if piv is None:
            return (Fraction(0), Fraction(0))
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = (-det[0], -det[1])
        det = _fmul(det, m[c][c])
        inv = _finv(m[c][c])
        for r in range(c + 1, n):
            if m[r][c] != (0, 0):
                f = _fmul(m[r][c], inv)
                m[r] = [_fsub(a, _fmul(f, b)) for a, b in zip(m[r], m[c])]
    return det


def _finverse(rows):
    n = len(rows)
    zero, one = (Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))
    m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != zero), None)
        if piv is None:
            raise Singular("matrix is not invertible")
        m[c], m[piv] = m[piv], m[c]
        inv = _finv(m[c][c])
        m[c] = [_fmul(inv, a) for a in m[c]]
        for r in range(n):
            if r != c and m[r][c] != zero:
                f = m[r][c]
                m[r] = [_fsub(a, _fmul(f, b)) for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


# Hermite and Smith forms

class _PrecisionLow(Exception):
    pass


def _hermite(rows, p: int, prec: int):
    """Canonical upper-triangular column Hermite form of the lattice spanned by the columns."""
    mod = p ** prec
    n = len(rows)
    H = [[(a % mod, b % mod) for a, b in row] for row in rows]
    exps = [0] * n
    for i in range(n - 1, -1, -1):
        best, bv = -1, prec
        for j in range(i + 1):
            v = _gval(H[i][j], p)
            if v is not None and v < bv:
                best, bv = j, v
        if best < 0:
            raise _PrecisionLow
        if best != i:
            for r in range(n):
                H[r][i], H[r][best] = H[r][best], H[r][i]
        pe = p ** bv
        a, b = H[i][i]
        uinv = _ginv_mod((a // pe, b // pe), p, mod)
        for r in range(i + 1):
            x = _gmul(H[r][i], uinv)
            H[r][i] = (x[0] % mod, x[1] % mod)
        for j in range(i):
            a, b = H[i][j]
            if a or b:
                c = (a // pe, b // pe)
                for r in range(i + 1):
                    x = _gmul(c, H[r][i])
                    H[r][j] = ((H[r][j][0] - x[0]) % mod, (H[r][j][1] - x[1]) % mod)
        exps[i] = bv
    for i in range(n - 1, -1, -1):
        m = p ** exps[i]
        for j in range(i + 1, n):
            a, b = H[i][j]
            c = (a // m, b // m)
            if c != (0, 0):
                for r in range(i + 1):
                    x = _gmul(c, H[r][i])
                    H[r][j] = ((H[r][j][0] - x[0]) % mod, (H[r][j][1] - x[1]) % mod)
    # rows were cleared left of each pivot, so the strict lower part is zero
    out = tuple(tuple(H[r][j] if r <= j else (0, 0) for j in range(n)) for r in range(n))
    return tuple(exps), out


def _smith_vals(rows, p: int, prec: int) -> list[int]:
    mod = p ** prec
    M = [[(a % mod, b % mod) for a, b in row] for row in rows]
    n = len(M)
    out = []
    live_r, live_c = list(range(n)), list(range(n))
    while live_r:
        best, bv = None, prec
        for r in live_r:
            for c in live_c:
                v = _gval(M[r][c], p)
                if v is not None and v < bv:
                    best, bv = (r, c), v
        if best is None:
            raise _PrecisionLow
        r0, c0 = best
        pe = p ** bv
        a, b = M[r0][c0]
        uinv = _ginv_mod((a // pe, b // pe), p, mod)
        for r in live_r:
            if r != r0 and M[r][c0] != (0, 0):
                a, b = M[r][c0]
                f = _gmul((a // pe, b // pe), uinv)
                M[r] = [((x[0] - y[0]) % mod, (x[1] - y[1]) % mod)
                        for x, y in zip(M[r], (_gmul(f, z) for z in M[r0]))]
        out.append(bv)
        live_r.remove(r0)
        live_c.remove(c0)
    return out


# matrices

class LocalMatrix:
    """p^-s * A with A an integral Gaussian matrix; dv is v(det A)."""

    __slots__ = ("p", "s", "rows", "dv", "_key")

    def __init__(self, p: int, s: int, rows, dv: int):
        self.p = p
        self.s = s
        self.rows = rows
        self.dv = dv
        self._key = None

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def from_fractions(cls, p: int, rows) -> "LocalMatrix":
        rows = [[_fr(x) for x in row] for row in rows]
        s = 0
        for row in rows:
            for x in row:
                for part in x:
                    if part:
                        den = part.denominator
                        k = _vp(den, p)
                        if den != p ** k:
                            raise ValueError(f"denominator {den} is not a power of {p}")
                        s = max(s, k)
        scale = p ** s
        ints = tuple(tuple((int(x[0] * scale), int(x[1] * scale)) for x in row) for row in rows)
        det = _fdet(rows)
        v = _fval(det, p)
        if v is None:
            raise Singular("matrix is singular")
        return cls(p, s, ints, v + len(rows) * s)

    @classmethod
    def from_entries(cls, p: int, n: int, entries: dict, diagonal=1) -> "LocalMatrix":
        rows = [[(diagonal if i == j else 0) for j in range(n)] for i in range(n)]
        for (i, j), x in entries.items():
            rows[i][j] = x
        return cls.from_fractions(p, rows)

    @classmethod
    def identity(cls, p: int, n: int) -> "LocalMatrix":
        return cls(p, 0, tuple(tuple((1, 0) if i == j else (0, 0) for j in range(n)) for i in range(n)), 0)

    def __mul__(self, other: "LocalMatrix") -> "LocalMatrix":
        A, B = self.rows, other.rows
        cols = list(zip(*B))
        out = []
        for row in A:
            new = []
            for col in cols:
                re = im = 0
                for (a, b), (c, d) in zip(row, col):
                    if a or b:
                        re += a * c - b * d
                        im += a * d + b * c
                new.append((re, im))
            out.append(tuple(new))
        return LocalMatrix(self.p, self.s + other.s, tuple(out), self.dv + other.dv)

    def fractions(self):
        scale = Fraction(self.p) ** -self.s
        return [[(a * scale, b * scale) for a, b in row] for row in self.rows]

    def inverse(self) -> "LocalMatrix":
        return LocalMatrix.from_fractions(self.p, _finverse(self.fractions()))

    def __pow__(self, e: int) -> "LocalMatrix":
        base = self if e >= 0 else self.inverse()
        out = LocalMatrix.identity(self.p, self.size)
        for _ in range(abs(e)):
            out = out * base
        return out

    def hermite(self):
        """(exponents of the integral Hermite diagonal, canonical form)."""
        return _hermite(self.rows, self.p, self.dv + 1)

    def key(self):
        if self._key is None:
            exps, H = self.hermite()
            p = self.p
            t = min(v for v in (_gval(x, p) for row in H for x in row) if v is not None)
            if t:
                pt = p ** t
                H = tuple(tuple((a // pt, b // pt) for a, b in row) for row in H)
            self._key = (self.s - t, H)
        return self._key

    @classmethod
    def from_key(cls, p: int, key) -> "LocalMatrix":
        s, H = key
        dv = sum(_gval(H[i][i], p) for i in range(len(H)))
        out = cls(p, s, H, dv)
        out._key = key
        return out

    def canonical(self) -> "LocalMatrix":
        return LocalMatrix.from_key(self.p, self.key())

    def diagonal_valuations(self) -> tuple[int, ...]:
        """Valuations of the upper-triangular Iwasawa factor b in g = b k (ambient coordinates)."""
        exps, _ = self.hermite()
        return tuple(e - self.s for e in exps)

    def elementary_valuations(self) -> list[int]:
        return [v - self.s for v in _smith_vals(self.rows, self.p, self.dv + 1)]

    def entry_valuation(self, i: int, j: int) -> int | None:
        v = _gval(self.rows[i][j], self.p)
        return None if v is None else v - self.s

    def __eq__(self, other):
        return isinstance(other, LocalMatrix) and self.fractions() == other.fractions()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LocalMatrix(p={self.p}, s={self.s}, rows={self.rows})"


def same_coset(g: LocalMatrix, h: LocalMatrix) -> bool:
    """gK = hK."""
    return g.key() == h.key()


# unit generators

def _primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in _prime_factors(p - 1)):
            return g
    return 1


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gpow_mod(x, e: int, p: int):
    out = (1, 0)
    while e:
        if e & 1:
            out = _gmul(out, x)
            out = (out[0] % p, out[1] % p)
        x = _gmul(x, x)
        x = (x[0] % p, x[1] % p)
        e >>= 1
    return out


def unit_generators(p: int, quadratic: bool = False) -> list[Gauss]:
    """Topological generators of Z_p^x, or of Z_p[xi]^x when p = 3 mod 4."""
    if not quadratic:
        if p == 2:
            return [(-1, 0), (5, 0)]
        return [(_primitive_root(p), 0), (1 + p, 0)]
    if p % 4 != 3:
        raise ValueError("the unramified model of E needs p = 3 mod 4")
    order = p * p - 1
    for a, b in product(range(p), repeat=2):
        if (a, b) == (0, 0):
            continue
        if all(_gpow_mod((a, b), order // f, p) != (1, 0) for f in _prime_factors(order)):
            return [(a, b), (1 + p, 0), (1, p)]
    raise AssertionError("F_{p^2}^x is cyclic")


# models

@dataclass
class ModelPreset:
    """A matrix realisation of a preset's group at a fixed prime p."""

    name: str
    family: str  # "gl", "gsp4" or "gu4"
    p: int
    size: int
    preset: Preset
    weyl: dict[str, LocalMatrix]
    omega: dict[str, LocalMatrix]
    root_group: dict[str, Callable[[object], LocalMatrix]]
    params: dict[str, list]
    taus: list[LocalMatrix] = field(default_factory=list)
    levi_blocks: list[tuple[int, ...]] = field(default_factory=list)
    levi_roots: list[tuple[int, int, Gauss]] = field(default_factory=list)
    levi_torus: list[LocalMatrix] = field(default_factory=list)
    levi_weyl: list[LocalMatrix] = field(default_factory=list)

    @property
    def borel_order(self) -> tuple[int, ...] | None:
        # e1 < e2 < e4 < e3 is an isotropic flag for the rank-3 forms
        return None if self.family == "gl" else (0, 1, 3, 2)

    @property
    def quadratic(self) -> bool:
        return self.family == "gu4"

    # coordinates

    def embed(self, lam: Sequence[int]) -> tuple[int, ...]:
        if self.family == "gl":
            return tuple(lam)
        a0, a1, a2 = lam
        return (a1, a2, a0 - a1, a0 - a2)

    def pullback(self, amb: Sequence[int]) -> tuple[int, ...]:
        if self.family == "gl":
            return tuple(amb)
        b1, b2, b3, b4 = amb
        if b1 + b3 != b2 + b4:
            raise EmbeddingMismatch(f"ambient exponents {tuple(amb)} do not come from the torus")
        return (b1 + b3, b1, b2)

    def uniformiser_power(self, lam: Sequence[int]) -> LocalMatrix:
        p = self.p
        amb = self.embed(lam)
        return LocalMatrix.from_entries(p, self.size, {(i, i): Fraction(p) ** e for i, e in enumerate(amb)})

    def generator(self, name: str, param=0) -> LocalMatrix:
        """g_s(kappa) = x_s(kappa) w_s."""
        return self.root_group[name](param) * self.weyl[name]

    # subgroup U = H cap K

    def u_generators(self, level: int) -> list[LocalMatrix]:
        p = self.p
        gens = []
        for i, j, coeff in self.levi_roots:
            for k in range(level):
                gens.append(LocalMatrix.from_entries(p, self.size, {(i, j): _fmul(_fr(coeff), _fr(p ** k))}))
        return gens + list(self.levi_torus) + list(self.levi_weyl)

    def nu_residue(self, u: LocalMatrix, variant: str = "anticyclotomic") -> Gauss:
        """nu(u) mod varpi for u in U, as an element of the residue field."""
        if u.s:
            raise ValueError("U-elements are integral")
        p = self.p
        dets = []
        for block in self.levi_blocks[-2:]:
            sub = [[u.rows[i][j] for j in block] for i in block]
            d = _fdet([[_fr(x) for x in row] for row in sub])
            dets.append((int(d[0]) % p, int(d[1]) % p))
        d1, d2 = dets
        if variant == "product":
            x = _gmul(d1, d2)
        else:
            x = _gmul(d2, _ginv_mod(d1, p, p))
        return (x[0] % p, x[1] % p)


def _scalar_params(p: int) -> list:
    return list(range(p))


def gl_model(n: int, p: int, similitude: bool = True, mixed: bool = True) -> ModelPreset:
    """GL_n, or GL_1 x GL_n with a similitude slot in front (the gln presets)."""
    preset = get_preset("gln", n) if similitude else get_preset("gl2")
    if not similitude and n != 2:
        raise ValueError("only GL_2 has a preset without the similitude slot")
    off = 1 if similitude else 0
    size = n + off
    pf = Fraction(p)

    def mat(entries, diag=1):
        return LocalMatrix.from_entries(p, size, entries, diag)

    weyl, roots = {}, {}
    for i in range(1, n):
        a, b = off + i - 1, off + i
        ent = {(a, a): 0, (b, b): 0, (a, b): 1, (b, a): 1}
        weyl[f"w{i}"] = mat(ent)
        roots[f"w{i}"] = (lambda a, b: lambda u: mat({(a, b): u}))(a, b)
    first, last = off, off + n - 1
    weyl["w0"] = mat({(first, first): 0, (last, last): 0, (first, last): 1 / pf, (last, first): pf})
    roots["w0"] = lambda u: mat({(last, first): pf * _fr(u)[0]})
    rho = {(first + i, first + i + 1): 1 for i in range(n - 1)}
    rho[(last, first)] = pf
    for i in range(n):
        rho.setdefault((first + i, first + i), 0)
    omega = {}
    if similitude:
        omega["r"] = mat({**rho, (0, 0): pf})
        omega["z"] = mat({(0, 0): pf})
    else:
        omega["r"] = mat(rho)
    params = {name: _scalar_params(p) for name in weyl}
    model = ModelPreset(f"gl{n}", "gl", p, size, preset, weyl, omega, roots, params)
    if similitude and mixed and n % 2 == 0:
        m = n // 2
        b1 = tuple(range(1, m + 1))
        b2 = tuple(range(m + 1, n + 1))
        model.levi_blocks = [(0,), b1, b2]
        for i in range(m + 1):
            ent = {(b1[j], b2[j]): 1 / pf for j in range(i)}
            model.taus.append(mat(ent))
        for block in (b1, b2):
            for i in block:
                for j in block:
                    if i != j:
                        model.levi_roots.append((i, j, (1, 0)))
            for i, j in zip(block, block[1:]):
                model.levi_weyl.append(mat({(i, i): 0, (j, j): 0, (i, j): 1, (j, i): 1}))
        for i in range(size):
            for g in unit_generators(p):
                model.levi_torus.append(mat({(i, i): g}))
    return model


def _rank3_matrices(p: int, quadratic: bool):
    pf = Fraction(p)
    sign = 1 if quadratic else -1
    return {
        "w0": {(0, 0): 0, (2, 2): 0, (0, 2): 1 / pf, (2, 0): pf, (3, 3): sign},
        "w1": {(0, 0): 0, (1, 1): 0, (2, 2): 0, (3, 3): 0, (0, 1): 1, (1, 0): 1, (2, 3): 1, (3, 2): 1},
        "w2": {(1, 1): 0, (3, 3): 0, (1, 3): 1, (3, 1): 1, (2, 2): sign},
        "r": {(0, 0): 0, (1, 1): 0, (2, 2): 0, (3, 3): 0, (0, 3): 1, (1, 2): 1, (2, 1): pf, (3, 0): pf},
    }


def _rank3_model(name: str, p: int) -> ModelPreset:
    quadratic = name == "gu4"
    if quadratic and p % 4 != 3:
        raise ValueError("the GU4 model needs p = 3 mod 4")
    preset = get_preset(name)
    pf = Fraction(p)
    xi = _fr(XI) if quadratic else _fr(1)

    def mat(entries, diag=1):
        return LocalMatrix.from_entries(p, 4, entries, diag)

    mats = _rank3_matrices(p, quadratic)
    weyl = {s: mat(mats[s]) for s in ("w0", "w1", "w2")}
    omega = {"r": mat(mats["r"])}

    def conj(u):
        u = _fr(u)
        return _fconj(u) if quadratic else u

    roots = {
        "w0": lambda u: mat({(2, 0): _fmul(_fmul(_fr(pf), xi), _fr(u))}),
        "w1": lambda u: mat({(0, 1): _fr(u), (3, 2): _fmul(_fr(-1), conj(u))}),
        "w2": lambda u: mat({(1, 3): _fmul(xi, _fr(u))}),
    }
    field_params = _scalar_params(p)
    params = {"w0": field_params, "w2": field_params,
              "w1": [(a, b) for a in range(p) for b in range(p)] if quadratic else field_params}
    model = ModelPreset(name, name, p, 4, preset, weyl, omega, roots, params)
    model.levi_blocks = [(0, 2), (1, 3)]
    for i, j in ((0, 2), (2, 0), (1, 3), (3, 1)):
        model.levi_roots.append((i, j, XI if quadratic else (1, 0)))
    if quadratic:
        for t in unit_generators(p, quadratic=True):
            # dis(N t, t, 1) and dis(N t, 1, t) keep every entry integral
            norm = t[0] * t[0] + t[1] * t[1]
            model.levi_torus.append(mat({(0, 0): t, (2, 2): t, (3, 3): norm}))
            model.levi_torus.append(mat({(1, 1): t, (2, 2): norm, (3, 3): t}))
        for u0 in unit_generators(p):
            model.levi_torus.append(mat({(2, 2): u0, (3, 3): u0}))
        swap = {(0, 0): 0, (2, 2): 0, (0, 2): 1, (2, 0): 1}
        model.levi_weyl.append(mat(swap))
        model.levi_weyl.append(mat({(1, 1): 0, (3, 3): 0, (1, 3): 1, (3, 1): 1}))
        model.taus = [
            LocalMatrix.identity(p, 4),
            mat({(0, 0): pf, (1, 1): pf, (0, 3): -1, (1, 2): 1}),
            mat({(0, 0): pf * pf, (1, 1): pf * pf, (0, 3): -1, (1, 2): 1}),
            mat({(0, 0): pf * pf, (0, 1): pf, (0, 2): 1, (0, 3): -pf, (1, 1): pf, (1, 2): 1,
                 (3, 2): -1, (3, 3): pf}),
        ]
    else:
        for t in unit_generators(p):
            model.levi_torus.append(mat({(0, 0): t, (3, 3): t}))
            model.levi_torus.append(mat({(1, 1): t, (2, 2): t}))
            model.levi_torus.append(mat({(2, 2): t, (3, 3): t}))
        model.levi_weyl.append(mat({(0, 0): 0, (2, 2): 0, (0, 2): 1, (2, 0): -1}))
        model.levi_weyl.append(mat({(1, 1): 0, (3, 3): 0, (1, 3): 1, (3, 1): -1}))
        model.taus = [LocalMatrix.identity(p, 4), mat({(0, 0): pf, (1, 1): pf, (0, 3): 1, (1, 2): 1})]
    return model


def gsp4_model(p: int) -> ModelPreset:
    return _rank3_model("gsp4", p)


def gu4_model(p: int = 3) -> ModelPreset:
    return _rank3_model("gu4", p)


def model_for(name: str, p: int, n: int | None = None) -> ModelPreset:
    key = name.lower()
    if key == "gl2":
        return gl_model(2, p, similitude=False)
    if key in ("gln", "gl_n"):
        return gl_model(n, p)
    if key.startswith("gl") and key[2:].isdigit():
        return gl_model(int(key[2:]), p)
    if key == "gl2-toy":
        return gl_model(2, p)
    if key == "gsp4":
        return gsp4_model(p)
    if key == "gu4":
        return gu4_model(p)
    raise KeyError(f"no matrix model for {name!r}")


# group membership

def _similitude_form(model: ModelPreset):
    one, zero = _fr(1), _fr(0)
    if model.family == "gsp4":
        J = [[zero, zero, one, zero], [zero, zero, zero, one],
             [_fr(-1), zero, zero, zero], [zero, _fr(-1), zero, zero]]
    else:
        J = [[zero, zero, one, zero], [zero, zero, zero, one],
             [one, zero, zero, zero], [zero, one, zero, zero]]
    return J


def _fmatmul(A, B):
    zero = _fr(0)
    out = []
    for row in A:
        new = []
        for col in zip(*B):
            acc = zero
            for x, y in zip(row, col):
                acc = (acc[0] + x[0] * y[0] - x[1] * y[1], acc[1] + x[0] * y[1] + x[1] * y[0])
            new.append(acc)
        out.append(new)
    return out


def similitude(model: ModelPreset, g: LocalMatrix):
    """mu(g) with gbar^T J g = mu J, or None if g is not in the group."""
    if model.family == "gl":
        return _fdet(g.fractions())
    F = g.fractions()
    left = [[(_fconj(x) if model.quadratic else x) for x in col] for col in zip(*F)]
    J = _similitude_form(model)
    prod = _fmatmul(_fmatmul(left, J), F)
    mu = prod[0][2]
    for i in range(4):
        for j in range(4):
            want = _fmul(mu, J[i][j])
            if prod[i][j] != want:
                return None
    if model.quadratic and mu[1] != 0:
        return None
    return mu


def in_group(model: ModelPreset, g: LocalMatrix) -> bool:
    mu = similitude(model, g)
    return mu is not None and mu != _fr(0)


def in_K(model: ModelPreset, g: LocalMatrix) -> bool:
    """g in G(O): integral entries and integral inverse, inside the group."""
    return in_group(model, g) and g.s == 0 and g.dv == 0


def membership_and_equality(model: ModelPreset, g: LocalMatrix, h: LocalMatrix | None = None):
    """(g in K, gK = hK) with h defaulting to the identity."""
    h = h or LocalMatrix.identity(model.p, model.size)
    return in_K(model, g), same_coset(g, h)


# shapes and classes

def iwasawa_shape(model: ModelPreset, g: LocalMatrix) -> tuple[int, ...]:
    """mu with g in varpi^mu N K, N the unipotent radical of the standard Borel."""
    order = model.borel_order
    if order is None:
        return model.pullback(g.diagonal_valuations())
    # the Borel is upper triangular once the coordinates are listed in this order
    moved = LocalMatrix(g.p, g.s, tuple(g.rows[i] for i in order), g.dv)
    vals = moved.diagonal_valuations()
    amb = [0] * model.size
    for pos, i in enumerate(order):
        amb[i] = vals[pos]
    return model.pullback(amb)


def cartan_type(model: ModelPreset, g: LocalMatrix) -> tuple[int, ...]:
    """The dominant lambda with g in K varpi^lambda K."""
    if model.family == "gl":
        if "n" not in model.preset.extra:
            return tuple(sorted(g.elementary_valuations(), reverse=True))
        sim = g.entry_valuation(0, 0)
        rest = LocalMatrix.from_fractions(model.p, [row[1:] for row in g.fractions()[1:]])
        return (sim,) + tuple(sorted(rest.elementary_valuations(), reverse=True))
    b = sorted(g.elementary_valuations(), reverse=True)
    if b[0] + b[3] != b[1] + b[2]:
        raise EmbeddingMismatch(f"elementary divisors {b} are not symmetric")
    return (b[0] + b[3], b[0], b[1])


def monomial_class(model: ModelPreset, g: LocalMatrix) -> ExtAffineElement:
    """The class t(-mu) w of a monomial matrix in the extended affine Weyl group."""
    n = model.size
    perm, vals = {}, {}
    for j in range(n):
        nz = [i for i in range(n) if g.rows[i][j] != (0, 0)]
        if len(nz) != 1:
            raise ValueError("matrix is not monomial")
        perm[j] = nz[0]
        vals[nz[0]] = g.entry_valuation(nz[0], j)
    mu = model.pullback(tuple(vals[i] for i in range(n)))
    rank = model.preset.rank
    cols = []
    for k in range(rank):
        basis = tuple(1 if i == k else 0 for i in range(rank))
        amb = model.embed(basis)
        moved = [0] * n
        for j in range(n):
            moved[perm[j]] = amb[j]
        cols.append(model.pullback(moved))
    w = tuple(tuple(cols[k][i] for k in range(rank)) for i in range(rank))
    return ExtAffineElement(tuple(-x for x in mu), w)


def validate_model(model: ModelPreset) -> list[str]:
    """Return the names of generators whose matrix class disagrees with the preset."""
    aff = model.preset.affine
    bad = []
    for name, g in model.weyl.items():
        if monomial_class(model, g) != aff.generators[name] or not in_group(model, g):
            bad.append(name)
    for name, g in model.omega.items():
        if monomial_class(model, g) != aff.omega[name] or not in_group(model, g):
            bad.append(name)
    for name, fn in model.root_group.items():
        for u in model.params[name][:3]:
            if not in_K(model, fn(u)):
                bad.append(f"x_{name}({u})")
    for u in model.u_generators(1):
        if not in_K(model, u):
            bad.append("U-generator")
    for i, t in enumerate(model.taus):
        if not in_group(model, t):
            bad.append(f"tau{i}")
    return bad


# coset enumeration

@dataclass
class CosetList:
    keys: list  # canonical keys in enumeration order
    cells: list[tuple[str, int]]  # (word, number of cosets)

    def __len__(self):
        return len(self.keys)

    def matrices(self, p: int) -> list[LocalMatrix]:
        return [LocalMatrix.from_key(p, k) for k in self.keys]


def _omega_product(model: ModelPreset, omega) -> LocalMatrix:
    out = LocalMatrix.identity(model.p, model.size)
    for name, e in omega:
        out = out * (model.omega[name] ** e)
    return out


def enumerate_cells(model: ModelPreset, lam: Sequence[int], q: int | None = None) -> CosetList:
    """Representatives X_w(kappa) of K varpi^lam K / K, one per coset, deduplicated by key."""
    decomposition = hecke_cells(model.preset, lam)
    p = model.p
    keys, seen, cells = [], set(), []
    for cell in decomposition.cells:
        tail = _omega_product(model, cell.word.omega)
        letters = cell.word.letters
        count = 0
        stack = [(0, LocalMatrix.identity(p, model.size))]
        while stack:
            depth, pre = stack.pop()
            if depth == len(letters):
                key = (pre * tail).key()
                if key in seen:
                    raise DuplicateCoset(f"two parameter choices of {cell.word} give the same coset")
                seen.add(key)
                keys.append(key)
                count += 1
                continue
            s = letters[depth]
            for u in model.params[s]:
                stack.append((depth + 1, pre * model.generator(s, u)))
        cells.append((str(cell.word), count))
    expected = decomposition.total.at(q or p)
    if len(keys) != expected:
        raise CountMismatch(f"{len(keys)} cosets enumerated, cell total gives {expected}")
    return CosetList(keys, cells)


def shape_census(model: ModelPreset, lam: Sequence[int]) -> Counter:
    cosets = enumerate_cells(model, lam)
    return Counter(iwasawa_shape(model, g) for g in cosets.matrices(model.p))


def convolution_count(model: ModelPreset, sigma: Sequence[int], tau: Sequence[int],
                      upsilon: Sequence[int]) -> int:
    """#{xK in K varpi^sigma K / K : x^-1 varpi^upsilon in K varpi^tau K}."""
    ups = model.uniformiser_power(upsilon)
    tau_dom = tuple(tau)
    total = 0
    for x in enumerate_cells(model, sigma).matrices(model.p):
        if cartan_type(model, x.inverse() * ups) == tau_dom:
            total += 1
    return total


# U-orbits

def _orbit_closure(start, step: Callable, gens: list) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = step(g, cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _apply(model: ModelPreset):
    p = model.p
    cache: dict = {}

    def act(g: LocalMatrix, key):
        rep = cache.get(key)
        if rep is None:
            rep = cache[key] = LocalMatrix.from_key(p, key)
        return (g * rep).key()
    return act


def default_level(model: ModelPreset, cosets: CosetList) -> int:
    spread = 0
    for s, H in cosets.keys:
        vals = [_gval(x, model.p) for row in H for x in row]
        vals = [v for v in vals if v is not None]
        spread = max(spread, max(vals) - min(vals))
    return 2 + spread


def _partition(model: ModelPreset, keys: Sequence, level: int) -> list[frozenset]:
    gens = model.u_generators(level)
    act = _apply(model)
    remaining = set(keys)
    out = []
    for key in keys:
        if key not in remaining:
            continue
        orbit = _orbit_closure(key, act, gens)
        if not orbit <= set(keys):
            raise NotInvariant("U does not preserve the coset list")
        remaining -= orbit
        out.append(frozenset(orbit))
    return out


def u_orbit_partition(model: ModelPreset, cosets: CosetList, level: int | None = None) -> list[frozenset]:
    """U-orbits on a U-stable coset list, cross-checked at level N + 1."""
    if not model.levi_blocks:
        raise KeyError(f"model {model.name} has no Levi subgroup")
    level = level or default_level(model, cosets)
    low = _partition(model, cosets.keys, level)
    high = _partition(model, cosets.keys, level + 1)
    if set(low) != set(high):
        raise LevelTooLow(f"orbit partition changes between level {level} and {level + 1}")
    return low


def class_representative(model: ModelPreset, lam: Sequence[int], tau: int) -> LocalMatrix:
    return model.uniformiser_power(lam) * model.taus[tau]


def locate_classes(model: ModelPreset, orbits: Sequence[frozenset],
                   reps: Iterable[tuple[Sequence[int], int]]) -> list[int]:
    """Index of the orbit containing each varpi^lam tau_i K."""
    out = []
    for lam, tau in reps:
        key = class_representative(model, lam, tau).key()
        hit = [i for i, orb in enumerate(orbits) if key in orb]
        out.append(hit[0] if hit else -1)
    return out


def mixed_degree(model: ModelPreset, lam: Sequence[int], tau: int, level: int = 1) -> int:
    """[H_tau : H_tau cap varpi^-lam U varpi^lam] as an orbit-size ratio.

    Valid when H_tau = Stab_U(tau K), that is when H_tau lies in U.
    """
    gens = model.u_generators(level)
    act = _apply(model)
    x = model.taus[tau].key()
    y = model.uniformiser_power([-a for a in lam]).key()
    single = _orbit_closure(x, act, gens)
    pair = _orbit_closure((x, y), lambda g, st: (act(g, st[0]), act(g, st[1])), gens)
    return len(pair) // len(single)


def layer_index(model: ModelPreset, tau: int, variant: str = "anticyclotomic", level: int = 1) -> int:
    """Size of nu(H_tau) in C / D, the residue-field units (F_q^x or U_1(k))."""
    gens = model.u_generators(level)
    nus = [model.nu_residue(g, variant) for g in gens]
    act = _apply(model)
    p = model.p
    labelled = list(zip(gens, nus))
    x = model.taus[tau].key()
    single = _orbit_closure(x, act, gens)

    def step(pair, st):
        g, nu = pair
        r = _gmul(nu, st[1])
        return act(g, st[0]), (r[0] % p, r[1] % p)
    orbit = _orbit_closure((x, (1, 0)), step, labelled)
    return len(orbit) // len(single)


def index_compute(model: ModelPreset, lam: Sequence[int], tau: int, layer: bool = False,
                  variant: str = "anticyclotomic") -> int:
    if layer:
        return layer_index(model, tau, variant)
    return mixed_degree(model, lam, tau)


__all__ = [
    "LocalMatrix", "ModelPreset", "gl_model", "gsp4_model", "gu4_model", "model_for",
    "same_coset", "in_group", "in_K", "similitude", "membership_and_equality", "iwasawa_shape",
    "cartan_type", "monomial_class", "validate_model", "CosetList", "enumerate_cells",
    "shape_census", "convolution_count", "u_orbit_partition", "default_level",
    "class_representative", "locate_classes", "mixed_degree", "layer_index", "index_compute",
    "unit_generators",
]
