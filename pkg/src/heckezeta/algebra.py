"""Exact coefficient arithmetic.

``HalfPowerLaurent`` is an element of Z[q^{1/2}, q^{-1/2}] stored as a sparse
map from half-exponents to Python ints.  ``OrbitPolynomial`` is an element of
the group algebra R[Lambda] over that ring, keyed by integer tuples.
``XPolynomial`` is a thin univariate container used for Satake and Hecke
polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NonzeroRemainder, OddHalfPower

Lattice = tuple  # tuple[int, ...]


def _half(e) -> int:
    """Convert an exponent of q (int, Fraction or float-free str) to a half-exponent."""
    twice = Fraction(e) * 2
    if twice.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(twice)


class HalfPowerLaurent:
    """Laurent polynomial in t = q^{1/2} with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if v:
                    clean[int(k)] = int(v)
        self._terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: int) -> "HalfPowerLaurent":
        return cls({0: c})

    @classmethod
    def qpow(cls, e=1, coeff: int = 1) -> "HalfPowerLaurent":
        """coeff * q^e for a half-integer e."""
        return cls({_half(e): coeff})

    @classmethod
    def coerce(cls, x) -> "HalfPowerLaurent":
        if isinstance(x, HalfPowerLaurent):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to HalfPowerLaurent")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "HalfPowerLaurent":
        out: dict[int, int] = {}
        for h, c in pairs:
            out[h] = out.get(h, 0) + c
        return cls(out)

    # access
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, half_exp: int) -> int:
        return self._terms.get(half_exp, 0)

    def max_half(self) -> int:
        return max(self._terms)

    def min_half(self) -> int:
        return min(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_integral_power(self) -> bool:
        """True when every exponent of q is an integer."""
        return all(h % 2 == 0 for h in self._terms)

    # ring structure
    def __add__(self, other):
        try:
            other = HalfPowerLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return HalfPowerLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfPowerLaurent({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        try:
            other = HalfPowerLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return HalfPowerLaurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, OrbitPolynomial):
            return NotImplemented
        try:
            other = HalfPowerLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return HalfPowerLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (h, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power needs a unit coefficient")
            return HalfPowerLaurent({h * n: c ** (-n)})
        out = HalfPowerLaurent.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfPowerLaurent.const(other)
        if not isinstance(other, HalfPowerLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def shift(self, half_exp: int) -> "HalfPowerLaurent":
        """Multiply by q^{half_exp/2}."""
        return HalfPowerLaurent({k + half_exp: v for k, v in self._terms.items()})

    def invert_q(self) -> "HalfPowerLaurent":
        """Substitute q -> q^{-1}."""
        return HalfPowerLaurent({-k: v for k, v in self._terms.items()})

    def exact_div(self, other: "HalfPowerLaurent") -> "HalfPowerLaurent":
        """Exact quotient in Z[t, t^{-1}]; raises NonzeroRemainder otherwise."""
        other = HalfPowerLaurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return HalfPowerLaurent()
        top_d = other.max_half()
        lead = other._terms[top_d]
        bottom_d = other.min_half()
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        floor = self.min_half() - bottom_d
        while rem:
            top = max(rem)
            e = top - top_d
            if e < floor:
                raise NonzeroRemainder(f"{self} is not divisible by {other}")
            c, r = divmod(rem[top], lead)
            if r:
                raise NonzeroRemainder(f"{self} is not divisible by {other}")
            quot[e] = c
            for k, v in other._terms.items():
                rem[k + e] = rem.get(k + e, 0) - c * v
                if rem[k + e] == 0:
                    del rem[k + e]
        return HalfPowerLaurent(quot)

    # evaluation
    def residue_at(self, eps: int) -> int:
        return residue_at(self, eps)

    def at(self, q: int) -> Fraction:
        """Evaluate at an integer q; needs integral exponents of q."""
        if not self.is_integral_power():
            raise OddHalfPower(f"{self} has a genuine q^(1/2) term")
        total = Fraction(0)
        for h, c in self._terms.items():
            total += c * Fraction(q) ** (h // 2)
        return total

    def to_sympy(self):
        import sympy

        q = sympy.Symbol("q", positive=True)
        return sum((c * q ** sympy.Rational(h, 2) for h, c in self._terms.items()), sympy.Integer(0))

    # printing
    def __repr__(self):
        return f"HalfPowerLaurent({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for h, c in sorted(self._terms.items(), reverse=True):
            if h == 0:
                mono = ""
            elif h == 2:
                mono = "q"
            elif h % 2 == 0:
                mono = f"q^{h // 2}"
            else:
                mono = f"q^({h}/2)"
            if mono == "":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[list[int]]:
        return [[h, c] for h, c in self.pairs()]


Q = HalfPowerLaurent.qpow(1)
QHALF = HalfPowerLaurent.qpow(Fraction(1, 2))
ONE = HalfPowerLaurent.const(1)
ZERO = HalfPowerLaurent()


def residue_at(f: HalfPowerLaurent, eps: int) -> int:
    """Image of f under q^{1/2} -> 1 (eps = +1) or q -> -1 (eps = -1)."""
    if eps == 1:
        return sum(f._terms.values())
    if eps == -1:
        total = 0
        for h, c in f._terms.items():
            if h % 2:
                raise OddHalfPower(f"{f} has a genuine q^(1/2) term")
            total += c if (h // 2) % 2 == 0 else -c
        return total
    raise ValueError("eps must be +1 or -1")


def gaussian_binomial(n: int, k: int) -> HalfPowerLaurent:
    """q-binomial coefficient [n choose k]_q."""
    if k < 0 or k > n:
        return ZERO
    num = ONE
    den = ONE
    for i in range(k):
        num = num * (ONE - Q ** (n - i))
        den = den * (ONE - Q ** (i + 1))
    return num.exact_div(den)


class OrbitPolynomial:
    """Element of R[Lambda]: sparse map from lattice tuples to HalfPowerLaurent."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Lattice, HalfPowerLaurent | int] | None = None):
        clean: dict[Lattice, HalfPowerLaurent] = {}
        if terms:
            for lam, c in terms.items():
                c = HalfPowerLaurent.coerce(c)
                if c:
                    clean[tuple(int(x) for x in lam)] = c
        self._terms = clean

    @classmethod
    def monomial(cls, lam: Sequence[int], coeff=1) -> "OrbitPolynomial":
        return cls({tuple(lam): coeff})

    @classmethod
    def from_dict_sum(cls, items: Iterable[tuple[Lattice, HalfPowerLaurent | int]]) -> "OrbitPolynomial":
        out: dict[Lattice, HalfPowerLaurent] = {}
        for lam, c in items:
            lam = tuple(lam)
            out[lam] = out.get(lam, ZERO) + c
        return cls(out)

    @property
    def terms(self) -> dict[Lattice, HalfPowerLaurent]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self) -> list[Lattice]:
        return sorted(self._terms)

    def coeff(self, lam: Sequence[int]) -> HalfPowerLaurent:
        return self._terms.get(tuple(lam), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, OrbitPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, ZERO) + c
        return OrbitPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return OrbitPolynomial({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, HalfPowerLaurent)):
            c = HalfPowerLaurent.coerce(other)
            return OrbitPolynomial({k: v * c for k, v in self._terms.items()})
        if not isinstance(other, OrbitPolynomial):
            return NotImplemented
        out: dict[Lattice, HalfPowerLaurent] = {}
        for a, x in self._terms.items():
            for b, y in other._terms.items():
                s = tuple(i + j for i, j in zip(a, b))
                out[s] = out.get(s, ZERO) + x * y
        return OrbitPolynomial(out)

    def __rmul__(self, other):
        if isinstance(other, (int, HalfPowerLaurent)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, OrbitPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def shift(self, lam: Sequence[int]) -> "OrbitPolynomial":
        """Multiply by e^lam."""
        return OrbitPolynomial({tuple(i + j for i, j in zip(k, lam)): v for k, v in self._terms.items()})

    def negate_exponents(self) -> "OrbitPolynomial":
        return OrbitPolynomial({tuple(-i for i in k): v for k, v in self._terms.items()})

    def map_lattice(self, fn) -> "OrbitPolynomial":
        return OrbitPolynomial.from_dict_sum((fn(k), v) for k, v in self._terms.items())

    def map_coeffs(self, fn) -> "OrbitPolynomial":
        return OrbitPolynomial({k: fn(v) for k, v in self._terms.items()})

    def is_invariant(self, actions: Iterable) -> bool:
        """Check coefficient(w lam) == coefficient(lam) for each action callable."""
        for act in actions:
            for lam, c in self._terms.items():
                if self.coeff(act(lam)) != c:
                    return False
        return True

    def __repr__(self):
        return f"OrbitPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})e^{lam}" for lam, c in self.items())

    def to_json(self) -> list[dict]:
        return [{"lattice": list(lam), "coeff": c.to_json()} for lam, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "OrbitPolynomial":
        return cls({tuple(d["lattice"]): HalfPowerLaurent.from_pairs(d["coeff"]) for d in data})


def _grading(n: OrbitPolynomial, d: OrbitPolynomial) -> tuple[int, ...]:
    """An integer functional separating every pair of monomials involved."""
    support = n.support() + d.support()
    rank = len(support[0])
    spread = max(abs(x) for lam in support for x in lam) if support else 0
    base = 4 * spread + 3
    return tuple(base ** i for i in range(rank))


def ga_exact_divide(n: OrbitPolynomial, d: OrbitPolynomial) -> OrbitPolynomial:
    """Exact quotient n / d in R[Lambda] by graded long division.

    The grading h is a generic integer functional; leading terms are taken with
    respect to h and coefficients divided exactly in Z[q^{+-1/2}].
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero group-algebra element")
    if n.is_zero():
        return OrbitPolynomial()
    h = _grading(n, d)

    def grade(lam):
        return sum(a * b for a, b in zip(h, lam))

    d_items = list(d._terms.items())
    d_lead = max(d_items, key=lambda kv: grade(kv[0]))
    d_low = min(grade(k) for k, _ in d_items)
    floor = min(grade(k) for k in n._terms) - d_low

    rem = dict(n._terms)
    quot: dict[Lattice, HalfPowerLaurent] = {}
    while rem:
        top = max(rem, key=grade)
        shift = tuple(a - b for a, b in zip(top, d_lead[0]))
        if grade(shift) < floor:
            raise NonzeroRemainder("group-algebra division left a remainder")
        c = rem[top].exact_div(d_lead[1])
        quot[shift] = quot.get(shift, ZERO) + c
        for k, v in d_items:
            key = tuple(a + b for a, b in zip(k, shift))
            val = rem.get(key, ZERO) - c * v
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return OrbitPolynomial(quot)


class XPolynomial:
    """Polynomial in X with coefficients in a ring C (tuple index = degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, XPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __mul__(self, other: "XPolynomial") -> "XPolynomial":
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                term = a * b
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        return XPolynomial(out)

    def map(self, fn) -> "XPolynomial":
        return XPolynomial([fn(k, c) for k, c in enumerate(self.coeffs)])

    def __repr__(self):
        return "XPolynomial(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0
