"""Root data on a cocharacter lattice Z^r.

Characters and cocharacters are both stored as integer tuples of length r and
paired by the dot product.  Roots may carry a multiplicity (the degree of the
splitting field of the root group) which only enters the weighted half-sum
used by the Satake normalisation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import InvalidRootDatum, NotDominant, RankMismatch

Vec = tuple


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise RankMismatch(f"rank {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def solve_exact(columns: list[Vec], target: Vec) -> list[Fraction] | None:
    """Solve sum c_j columns[j] = target over Q; None if inconsistent.

    The columns are assumed linearly independent.
    """
    rows = len(target)
    k = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if mat[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = mat[i][k]
    return sol


@dataclass
class RootDatum:
    name: str
    rank: int
    roots: list[Vec]
    coroots: list[Vec]
    simple_indices: list[int]
    multiplicities: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.roots = [tuple(int(x) for x in a) for a in self.roots]
        self.coroots = [tuple(int(x) for x in a) for a in self.coroots]
        if not self.multiplicities:
            self.multiplicities = [1] * len(self.roots)
        # accept a list of positive roots only and close it under negation
        if self.roots and not any(vscale(-1, self.roots[0]) == a for a in self.roots):
            n = len(self.roots)
            self.roots = self.roots + [vscale(-1, a) for a in self.roots]
            self.coroots = self.coroots + [vscale(-1, a) for a in self.coroots]
            self.multiplicities = self.multiplicities + self.multiplicities[:n]
        self.validate()

    # construction helpers
    @classmethod
    def from_config(cls, block: dict) -> "RootDatum":
        return cls(
            name=block.get("name", "inline"),
            rank=int(block["rank"]),
            roots=block["roots"],
            coroots=block["coroots"],
            simple_indices=list(block["simples"]),
            multiplicities=list(block.get("multiplicities", [])),
        )

    def to_config(self) -> dict:
        n = len(self.positive_indices)
        pos = self.positive_indices
        return {
            "name": self.name,
            "rank": self.rank,
            "roots": [list(self.roots[i]) for i in pos],
            "coroots": [list(self.coroots[i]) for i in pos],
            "simples": [pos.index(i) for i in self.simple_indices],
            "multiplicities": [self.multiplicities[i] for i in pos][:n],
        }

    def validate(self) -> None:
        r = self.rank
        if len(self.roots) != len(self.coroots):
            raise InvalidRootDatum("roots and coroots differ in number")
        for a, c in zip(self.roots, self.coroots):
            if len(a) != r or len(c) != r:
                raise InvalidRootDatum("vector of wrong rank")
            if dot(c, a) != 2:
                raise InvalidRootDatum(f"<{c},{a}> != 2")
        root_set = set(self.roots)
        if len(root_set) != len(self.roots):
            raise InvalidRootDatum("duplicate roots")
        for a in self.roots:
            if vscale(2, a) in root_set:
                raise InvalidRootDatum("root system is not reduced")
        for i in range(len(self.roots)):
            for j, b in enumerate(self.roots):
                if self.reflect_character(b, i) not in root_set:
                    raise InvalidRootDatum("reflection does not permute the roots")
                img = self.reflect(self.coroots[j], i)
                k = self.roots.index(self.reflect_character(b, i))
                if img != self.coroots[k]:
                    raise InvalidRootDatum("reflection does not permute the coroots compatibly")
        simples = [self.roots[i] for i in self.simple_indices]
        for a in self.roots:
            sol = solve_exact(simples, a)
            if sol is None or any(x.denominator != 1 for x in sol):
                raise InvalidRootDatum(f"root {a} is not an integral combination of the simple roots")
            if not (all(x >= 0 for x in sol) or all(x <= 0 for x in sol)):
                raise InvalidRootDatum(f"root {a} has mixed signs over the simple roots")

    # basic structure
    @cached_property
    def positive_indices(self) -> list[int]:
        simples = [self.roots[i] for i in self.simple_indices]
        out = []
        for i, a in enumerate(self.roots):
            sol = solve_exact(simples, a)
            if all(x >= 0 for x in sol):
                out.append(i)
        return out

    @property
    def positive_roots(self) -> list[Vec]:
        return [self.roots[i] for i in self.positive_indices]

    @property
    def simple_roots(self) -> list[Vec]:
        return [self.roots[i] for i in self.simple_indices]

    @property
    def simple_coroots(self) -> list[Vec]:
        return [self.coroots[i] for i in self.simple_indices]

    @cached_property
    def highest_root_indices(self) -> list[int]:
        """Highest root of each irreducible component (by height over the simple roots)."""
        comps = self.components
        simples = self.simple_roots
        out = []
        for comp in comps:
            best, best_h = None, -1
            for i in self.positive_indices:
                sol = solve_exact(simples, self.roots[i])
                if any(sol[j] != 0 for j in range(len(simples)) if j not in comp):
                    continue
                h = sum(sol)
                if h > best_h:
                    best, best_h = i, h
            out.append(best)
        return out

    @cached_property
    def components(self) -> list[list[int]]:
        """Irreducible components as lists of positions in simple_indices."""
        k = len(self.simple_indices)
        adj = {i: set() for i in range(k)}
        for i in range(k):
            for j in range(k):
                if i != j and dot(self.simple_coroots[i], self.simple_roots[j]) != 0:
                    adj[i].add(j)
        seen, comps = set(), []
        for i in range(k):
            if i in seen:
                continue
            stack, comp = [i], []
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                comp.append(x)
                stack.extend(adj[x])
            comps.append(sorted(comp))
        return comps

    @cached_property
    def delta(self) -> tuple[Fraction, ...]:
        """Weighted half-sum of positive roots (weights = multiplicities)."""
        tot = [Fraction(0)] * self.rank
        for i in self.positive_indices:
            for j, x in enumerate(self.roots[i]):
                tot[j] += Fraction(self.multiplicities[i] * x, 2)
        return tuple(tot)

    @cached_property
    def delta_plain(self) -> tuple[Fraction, ...]:
        tot = [Fraction(0)] * self.rank
        for a in self.positive_roots:
            for j, x in enumerate(a):
                tot[j] += Fraction(x, 2)
        return tuple(tot)

    @cached_property
    def rho_check(self) -> tuple[Fraction, ...]:
        """Half-sum of positive coroots."""
        tot = [Fraction(0)] * self.rank
        for i in self.positive_indices:
            for j, x in enumerate(self.coroots[i]):
                tot[j] += Fraction(x, 2)
        return tuple(tot)

    # operations
    def pair(self, lam: Sequence, chi: Sequence) -> Fraction:
        if len(lam) != self.rank or len(chi) != self.rank:
            raise RankMismatch(f"expected rank {self.rank}")
        return Fraction(dot(lam, chi))

    def pair_delta(self, lam: Sequence) -> Fraction:
        return self.pair(lam, self.delta)

    def reflect(self, v: Sequence[int], root_index: int) -> Vec:
        """s_alpha on cocharacters: v - <v,alpha> alpha^vee."""
        a = self.roots[root_index]
        c = self.coroots[root_index]
        k = dot(v, a)
        return tuple(x - k * y for x, y in zip(v, c))

    def reflect_character(self, chi: Sequence[int], root_index: int) -> Vec:
        a = self.roots[root_index]
        c = self.coroots[root_index]
        k = dot(c, chi)
        return tuple(x - k * y for x, y in zip(chi, a))

    def reflection_matrix(self, root_index: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_alpha acting on column vectors of Lambda."""
        cols = [self.reflect(tuple(int(i == j) for i in range(self.rank)), root_index) for j in range(self.rank)]
        return tuple(tuple(cols[j][i] for j in range(self.rank)) for i in range(self.rank))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(dot(lam, a) >= 0 for a in self.simple_roots)

    def is_central(self, lam: Sequence[int]) -> bool:
        return all(dot(lam, a) == 0 for a in self.roots)

    def coroot_coefficients(self, v: Sequence[int]) -> list[Fraction] | None:
        return solve_exact(self.simple_coroots, tuple(v))

    def succeq(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        """lam - mu is a non-negative integer combination of simple coroots."""
        if len(lam) != self.rank or len(mu) != self.rank:
            raise RankMismatch(f"expected rank {self.rank}")
        sol = self.coroot_coefficients(vsub(lam, mu))
        if sol is None:
            return False
        return all(x.denominator == 1 and x >= 0 for x in sol)

    @cached_property
    def weyl(self):
        from .weyl import WeylGroup

        return WeylGroup(self)

    def opp(self, lam: Sequence[int]) -> Vec:
        return self.weyl.longest.apply(lam)

    def dominant_rep(self, lam: Sequence[int]) -> Vec:
        """The dominant element of W lam."""
        v = tuple(lam)
        changed = True
        while changed:
            changed = False
            for i in self.simple_indices:
                if dot(v, self.roots[i]) < 0:
                    v = self.reflect(v, i)
                    changed = True
        return v

    def orbit(self, lam: Sequence[int]) -> list[Vec]:
        return sorted({w.apply(lam) for w in self.weyl.elements})

    def dominant_support(self, lam: Sequence[int]) -> list[Vec]:
        """All dominant mu with lam >= mu."""
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        # each simple coroot pairs to 2 with 2*delta, and <mu, 2 delta> >= 0 for
        # dominant mu, so the total number of coroot steps is at most <lam, delta>
        bound = int(dot(lam, self.delta_plain))
        out = []
        k = len(self.simple_indices)
        for ns in _compositions_upto(k, bound):
            mu = lam
            for n, c in zip(ns, self.simple_coroots):
                if n:
                    mu = vsub(mu, vscale(n, c))
            if self.is_dominant(mu):
                out.append(mu)
        return sorted(set(out))

    def is_minuscule(self, lam: Sequence[int], cross_check: bool = True) -> bool:
        lam = tuple(lam)
        if not self.is_dominant(lam):
            raise NotDominant(f"{lam} is not dominant")
        ok = all(dot(lam, a) in (-1, 0, 1) for a in self.roots)
        if ok and cross_check and len(self.components) == 1:
            if self.dominant_support(lam) != [lam]:
                raise InvalidRootDatum("minuscule orbit cross-check failed")
        return ok


def _compositions_upto(k: int, total: int):
    """All k-tuples of non-negative integers with sum <= total."""
    if k == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_upto(k - 1, total - first):
            yield (first,) + rest


def gln_datum(n: int, with_similitude: bool = True) -> RootDatum:
    """GL_n (optionally times the similitude factor G_m in coordinate 0)."""
    off = 1 if with_similitude else 0
    r = n + off
    roots, coroots = [], []
    for i in range(n):
        for j in range(i + 1, n):
            a = [0] * r
            a[off + i], a[off + j] = 1, -1
            roots.append(tuple(a))
            coroots.append(tuple(a))
    simples = [roots.index(tuple(1 if k == off + i else -1 if k == off + i + 1 else 0 for k in range(r))) for i in range(n - 1)]
    name = f"gl{n}" + ("" if with_similitude else "-plain")
    return RootDatum(name, r, roots, coroots, simples)
