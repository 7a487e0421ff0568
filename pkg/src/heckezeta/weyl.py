"""Finite and extended affine Weyl groups.

Finite Weyl elements are integer matrices acting on column vectors of the
cocharacter lattice.  Extended affine elements are pairs (translation, matrix)
acting on Lambda (x) R by x -> translation + matrix x.  A uniformiser power
varpi^lam corresponds to the translation by -lam.

Lengths are counted as the number of affine root hyperplanes separating a
fixed generic point of the base alcove from its image.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import HalfPowerLaurent, Q
from .errors import NotLengthZero, NotReduced
from .rootdata import RootDatum, dot, vadd, vscale

Matrix = tuple  # tuple[tuple[int, ...], ...]


def mat_identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    r = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r))


def mat_apply(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


def mat_inverse_signed(a: Matrix) -> Matrix:
    """Inverse of a finite-order integer matrix by repeated multiplication."""
    r = len(a)
    ident = mat_identity(r)
    prev, cur = ident, a
    for _ in range(10_000):
        if cur == ident:
            return prev
        prev, cur = cur, mat_mul(cur, a)
    raise ValueError("matrix does not have finite order")


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    length: int
    word: tuple  # simple-reflection positions, 1-based (matching generator names w1..wk)

    def apply(self, v: Sequence[int]) -> tuple:
        return mat_apply(self.matrix, v)

    def word_str(self) -> str:
        return " ".join(f"w{i}" for i in self.word) or "1"


class WeylGroup:
    """The finite Weyl group of a root datum, enumerated by BFS."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.generators = [datum.reflection_matrix(i) for i in datum.simple_indices]
        ident = mat_identity(datum.rank)
        table: dict[Matrix, WeylElement] = {ident: WeylElement(ident, 0, ())}
        frontier = deque([ident])
        while frontier:
            m = frontier.popleft()
            el = table[m]
            for pos, g in enumerate(self.generators, start=1):
                nm = mat_mul(g, m)
                if nm not in table:
                    table[nm] = WeylElement(nm, el.length + 1, (pos,) + el.word)
                    frontier.append(nm)
        self.table = table
        self.elements = sorted(table.values(), key=lambda e: (e.length, e.word))

    def __len__(self):
        return len(self.elements)

    @cached_property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def lookup(self, matrix: Matrix) -> WeylElement:
        return self.table[matrix]

    def element_from_word(self, word: Iterable[int]) -> WeylElement:
        m = mat_identity(self.datum.rank)
        for pos in word:
            m = mat_mul(m, self.generators[pos - 1])
        return self.table[m]

    def length(self, matrix: Matrix) -> int:
        return self.table[matrix].length

    def stabilizer(self, lam: Sequence[int]) -> list[WeylElement]:
        lam = tuple(lam)
        return [w for w in self.elements if w.apply(lam) == lam]


def enumerate_weyl(datum: RootDatum) -> list[WeylElement]:
    return list(datum.weyl.elements)


@dataclass(frozen=True)
class ExtAffineElement:
    translation: tuple
    matrix: Matrix

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        return ExtAffineElement(
            vadd(self.translation, mat_apply(self.matrix, other.translation)),
            mat_mul(self.matrix, other.matrix),
        )

    def inverse(self) -> "ExtAffineElement":
        inv = mat_inverse_signed(self.matrix)
        return ExtAffineElement(vscale(-1, mat_apply(inv, self.translation)), inv)

    def __pow__(self, n: int) -> "ExtAffineElement":
        r = len(self.translation)
        out = ExtAffineElement((0,) * r, mat_identity(r))
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def act(self, x: Sequence) -> tuple:
        return tuple(t + y for t, y in zip(self.translation, mat_apply(self.matrix, x)))

    @classmethod
    def translation_by(cls, lam: Sequence[int]) -> "ExtAffineElement":
        r = len(lam)
        return cls(tuple(lam), mat_identity(r))

    @classmethod
    def from_uniformiser(cls, lam: Sequence[int]) -> "ExtAffineElement":
        """varpi^lam, under the convention varpi^lam -> t(-lam)."""
        return cls.translation_by(vscale(-1, lam))

    def to_json(self) -> dict:
        return {"translation": list(self.translation), "matrix": [list(r) for r in self.matrix]}


@dataclass
class ReducedWord:
    letters: list  # generator names in S_aff
    omega: list  # list of (omega generator name, exponent)
    element: ExtAffineElement

    @property
    def length(self) -> int:
        return len(self.letters)

    def __str__(self):
        parts = list(self.letters)
        for name, e in self.omega:
            if e == 1:
                parts.append(name)
            elif e != 0:
                parts.append(f"{name}^{e}")
        return " ".join(parts) or "1"

    def compact(self) -> str:
        return "".join(str(self).split())


class AffineWeyl:
    """Extended affine Weyl group attached to a root datum plus Omega generators."""

    def __init__(self, datum: RootDatum, omega: dict[str, ExtAffineElement],
                 param_exp: dict[str, int] | None = None):
        self.datum = datum
        self.weyl = datum.weyl
        r = datum.rank
        gens: dict[str, ExtAffineElement] = {}
        for pos, i in enumerate(datum.simple_indices, start=1):
            gens[f"w{pos}"] = ExtAffineElement((0,) * r, datum.reflection_matrix(i))
        affine = {}
        for comp_no, hi in enumerate(datum.highest_root_indices):
            name = "w0" if comp_no == 0 else f"w0_{comp_no}"
            affine[name] = ExtAffineElement(datum.coroots[hi], datum.reflection_matrix(hi))
        self.generators = {**affine, **gens}
        self.order = list(affine) + list(gens)
        self.omega = dict(omega)
        self.param_exp = {g: 1 for g in self.order}
        if param_exp:
            self.param_exp.update(param_exp)
        # generic base point of the fundamental alcove
        rc = datum.rho_check
        top = max(abs(dot(rc, a)) for a in datum.positive_roots) if datum.positive_roots else Fraction(0)
        scale = top + 1
        self.base_point = tuple(Fraction(x) / scale for x in rc)
        self.identity = ExtAffineElement((0,) * r, mat_identity(r))

    # lengths
    def length(self, u: ExtAffineElement) -> int:
        y = u.act(self.base_point)
        total = 0
        for a in self.datum.positive_roots:
            v = sum(Fraction(p) * c for p, c in zip(y, a))
            total += abs(v.numerator // v.denominator)
        return total

    def min_length_formula(self, nu: Sequence[int]) -> int:
        """Closed-form minimal length on the coset t(nu)W."""
        total = 0
        for a in self.datum.positive_roots:
            k = dot(nu, a)
            total += abs(k) if k <= 0 else k - 1
        return total

    def finite(self, w: WeylElement) -> ExtAffineElement:
        return ExtAffineElement((0,) * self.datum.rank, w.matrix)

    def from_word(self, letters: Iterable[str], omega: Iterable[tuple[str, int]] = ()) -> ExtAffineElement:
        u = self.identity
        for s in letters:
            u = u * self.generators[s]
        for name, e in omega:
            u = u * (self.omega[name] ** e)
        return u

    # words
    def omega_word(self, u: ExtAffineElement, bound: int = 16) -> list[tuple[str, int]]:
        if self.length(u) != 0:
            raise NotLengthZero("element does not stabilise the base alcove")
        if u == self.identity:
            return []
        names = list(self.omega)
        rng = sorted(range(-bound, bound + 1), key=lambda e: (abs(e), -e))
        for exps in itertools.product(rng, repeat=len(names)):
            cand = self.identity
            for name, e in zip(names, exps):
                cand = cand * (self.omega[name] ** e)
            if cand == u:
                return [(n, e) for n, e in zip(names, exps) if e != 0]
        raise NotLengthZero("length-zero element not reached by the Omega generators")

    def reduced_word(self, u: ExtAffineElement) -> ReducedWord:
        """Greedy left descent, lowest-indexed generator first."""
        letters = []
        cur = u
        ell = self.length(cur)
        while ell > 0:
            for name in self.order:
                s = self.generators[name]
                cand = s * cur
                cl = self.length(cand)
                if cl < ell:
                    letters.append(name)
                    cur, ell = cand, cl
                    break
            else:  # pragma: no cover - impossible for a Coxeter system
                raise NotReduced("no descent found")
        return ReducedWord(letters, self.omega_word(cur), u)

    # minimal representatives
    def min_in_right_coset(self, nu: Sequence[int]) -> ExtAffineElement:
        """Unique minimal-length element of t(nu)W."""
        best, best_len = None, None
        for w in self.weyl.elements:
            u = ExtAffineElement(tuple(nu), w.matrix)
            ell = self.length(u)
            if best_len is None or ell < best_len:
                best, best_len = u, ell
        return best

    def min_rep(self, lam: Sequence[int], mode: str = "double") -> ReducedWord:
        """Minimal element attached to K varpi^lam K (double) or t(-lam^opp)W (right).

        Both modes land in t(-lam^opp)W; for the double coset the minimum of
        W t(-lam) W lies in the coset whose translation is dominant.
        """
        lam = tuple(lam)
        if mode not in ("double", "right"):
            raise ValueError("mode must be 'double' or 'right'")
        nu = vscale(-1, self.datum.opp(lam))
        if mode == "double":
            from .errors import NotDominant

            if not self.datum.is_dominant(lam):
                raise NotDominant(f"{lam} is not dominant")
        return self.reduced_word(self.min_in_right_coset(nu))

    def double_coset_min(self, lam: Sequence[int]) -> ExtAffineElement:
        """Brute-force minimum over W t(-lam) W, used to validate min_rep."""
        best, best_len = None, None
        t = ExtAffineElement.from_uniformiser(lam)
        for w in self.weyl.elements:
            for v in self.weyl.elements:
                u = self.finite(w) * t * self.finite(v)
                ell = self.length(u)
                if best_len is None or ell < best_len:
                    best, best_len = u, ell
        return best

    # subgroups generated by subsets of S_aff
    def generate(self, names: Sequence[str], limit: int = 100_000) -> dict[ExtAffineElement, tuple]:
        """Elements of the (finite) subgroup generated by `names`, each with a word."""
        out = {self.identity: ()}
        frontier = deque([self.identity])
        while frontier:
            u = frontier.popleft()
            for n in names:
                v = u * self.generators[n]
                if v not in out:
                    out[v] = out[u] + (n,)
                    frontier.append(v)
                    if len(out) > limit:
                        raise ValueError("parabolic subgroup is too large (not finite?)")
        return out

    def parabolic_min_reps(self, big: Sequence[str], small: Sequence[str]) -> list[ReducedWord]:
        """Minimal-length representatives of W_big / W_small."""
        if not set(small) <= set(big):
            raise ValueError("small generating set must be contained in the big one")
        elems = self.generate(big)
        sub = list(self.generate(small))
        seen = set()
        reps = []
        for u in sorted(elems, key=lambda e: (self.length(e), elems[e])):
            if u in seen:
                continue
            coset = {u * z for z in sub}
            seen |= coset
            best = min(coset, key=lambda e: (self.length(e), str(e)))
            reps.append(self.reduced_word(best))
        return sorted(reps, key=lambda r: (r.length, r.letters))

    def size_exponent(self, word: ReducedWord | Sequence[str]) -> int:
        letters = word.letters if isinstance(word, ReducedWord) else word
        return sum(self.param_exp[s] for s in letters)

    def poincare(self, reps: Sequence[ReducedWord]) -> HalfPowerLaurent:
        total = HalfPowerLaurent()
        for r in reps:
            total = total + Q ** self.size_exponent(r)
        return total

    def omega_conjugate(self, omega: ExtAffineElement, name: str) -> str:
        if self.length(omega) != 0:
            raise NotLengthZero("conjugating element has nonzero length")
        target = omega * self.generators[name] * omega.inverse()
        for other in self.order:
            if self.generators[other] == target:
                return other
        raise NotLengthZero("conjugate is not a simple affine reflection")

    def omega_permutation(self, omega: ExtAffineElement) -> dict[str, str]:
        return {s: self.omega_conjugate(omega, s) for s in self.order}


def weak_order_diagram(datum: RootDatum, lam: Sequence[int]) -> dict:
    """Hasse diagram of W lam: edges mu -> s mu whenever s raises mu."""
    from .errors import NotDominant

    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    nodes = datum.orbit(lam)
    edges = []
    for mu in nodes:
        for pos, i in enumerate(datum.simple_indices, start=1):
            if dot(mu, datum.roots[i]) < 0:
                edges.append((mu, datum.reflect(mu, i), f"s{pos}"))
    return {"nodes": nodes, "edges": sorted(edges), "source": datum.opp(lam), "sink": lam}


def diagram_to_dot(diagram: dict, name: str = "orbit") -> str:
    def label(v):
        return '"' + ",".join(str(x) for x in v) + '"'

    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in diagram["nodes"]:
        lines.append(f"  {label(v)};")
    for a, b, s in diagram["edges"]:
        lines.append(f"  {label(a)} -> {label(b)} [label=\"{s}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poincare_of_group_quotient(datum: RootDatum, big: WeylGroup | None, stab: Sequence[WeylElement],
                               param_exp: dict[int, int] | None = None) -> HalfPowerLaurent:
    """Poincare polynomial of W / W_stab for a finite Weyl group (minimal coset reps)."""
    big = big or datum.weyl
    stab_m = [s.matrix for s in stab]
    seen, total = set(), HalfPowerLaurent()
    for w in big.elements:
        if w.matrix in seen:
            continue
        coset = [mat_mul(w.matrix, s) for s in stab_m]
        seen.update(coset)
        rep = min((big.lookup(m) for m in coset), key=lambda e: e.length)
        exp = sum((param_exp or {}).get(p, 1) for p in rep.word)
        total = total + Q ** exp
    return total
