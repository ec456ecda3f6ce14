"""Cyclic covers of the projective line branched over k + 2 points.

A cover is given by its branch exponents ``(m_0, m_1, ..., m_k, m_inf)``
with ``sum(m) = 0 mod n``; point ``i`` has inertia of order
``n / gcd(n, m_i)``.  When some point is fully ramified the fundamental group
of the cover has the Reidemeister-Schreier generators

    delta_{i,j} = g0^i g_j g0^{-(i + m_j)}    (0 <= i < n, 1 <= j <= k)

relative to the Schreier system {g0^s}, where g0 is the local generator at
the distinguished full point (relabelled so that it maps to 1 in Z/n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .abelian import FinAbelianGroup, QuotientGroup, charpoly
from .cyclotomic import cyclotomic_poly, divisors, x_pow_minus_one
from .errors import (
    InvalidBranchData,
    NonIntegralGenus,
    NotDividing,
    NotFullyRamified,
    PreconditionOneFull,
    PreconditionTwoFull,
)
from .intpoly import IntPoly, divmod_exact, exact_quotient

# a letter of a word in the delta generators: (i, j, +1 | -1)
RawLetter = tuple


@dataclass(frozen=True)
class BranchData:
    n: int
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(a) for a in self.m))
        if self.n < 2:
            raise InvalidBranchData("covering degree must be >= 2")
        if len(self.m) < 2:
            raise InvalidBranchData("need at least the two points 0 and infinity")
        for a in self.m:
            if not 1 <= a < self.n:
                raise InvalidBranchData(f"branch exponent {a} outside [1, {self.n})")
        if sum(self.m) % self.n:
            raise InvalidBranchData(f"exponents {self.m} do not sum to 0 mod {self.n}")
        if math.gcd(self.n, *self.m) != 1:
            raise InvalidBranchData(f"exponents {self.m} do not generate Z/{self.n}; the cover is disconnected")

    @classmethod
    def from_json(cls, data: dict) -> "BranchData":
        try:
            return cls(int(data["n"]), tuple(data["m"]))
        except (KeyError, TypeError) as exc:
            raise InvalidBranchData(f"bad branch data {data!r}") from exc

    def to_json(self) -> dict:
        return {"n": self.n, "m": list(self.m)}

    @property
    def k(self) -> int:
        return len(self.m) - 2

    @property
    def inertia(self) -> tuple:
        return inertia_orders(self)

    def full_points(self) -> list:
        return [i for i, r in enumerate(self.inertia) if r == self.n]


def inertia_orders(b: BranchData) -> tuple:
    return tuple(b.n // math.gcd(b.n, a) for a in b.m)


def genus(b: BranchData) -> int:
    """Hurwitz: 2g - 2 = n (-2 + sum (r_i - 1) / r_i)."""
    chi = b.n * (-2 + sum(Fraction(r - 1, r) for r in inertia_orders(b)))
    two_g = chi + 2
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise NonIntegralGenus(f"Hurwitz formula gives 2g = {two_g} for {b.to_json()}")
    return two_g.numerator // 2


def normalize(b: BranchData) -> tuple:
    """Rotate a full point to position 0 and rescale so that m_0 = 1.

    Returns ``(normalized, rotation, unit)``: ``normalized.m`` is
    ``unit * b.m[rotation:] + b.m[:rotation]`` reduced mod n.
    """
    full = b.full_points()
    if not full:
        raise NotFullyRamified(f"no point of full ramification in {b.to_json()}")
    rot = 0 if 0 in full else full[0]
    m = b.m[rot:] + b.m[:rot]
    unit = pow(m[0], -1, b.n)
    return BranchData(b.n, tuple(unit * a % b.n for a in m)), rot, unit


@dataclass
class RSPresentation:
    """Reidemeister-Schreier data for the fundamental group of the cover.

    ``data`` is the normalized branch data (m_0 = 1).  Generators are the
    pairs (i, j); ``eliminated`` holds those removed with the power relations.
    """

    original: BranchData
    data: BranchData
    rotation: int
    unit: int
    generators: list
    eliminated: list
    power_relations: list
    infinity_relations: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def k(self) -> int:
        return self.data.k

    @property
    def kept(self) -> list:
        dropped = set(self.eliminated)
        return [g for g in self.generators if g not in dropped]

    def index(self) -> dict:
        return {g: t for t, g in enumerate(self.generators)}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m_normalized": list(self.data.m),
            "rotation": self.rotation,
            "unit": self.unit,
            "generator_count": len(self.generators),
            "eliminated": [list(g) for g in self.eliminated],
            "kept": [list(g) for g in self.kept],
        }


def rewrite(b: BranchData, letters: Sequence[tuple], start: int = 0) -> list:
    """Reidemeister-Schreier rewriting of a word in g_0, ..., g_k.

    ``b`` must be normalized (m_0 = 1).  ``letters`` holds ``(j, e)`` with
    ``e = +1`` or ``-1``.  Letters g_0^{+-1} only move the coset; the
    generator g_0^n they produce at the wrap-around is trivial.
    """
    n, m = b.n, b.m
    state = start % n
    out = []
    for j, e in letters:
        step = m[j]
        if j == 0:
            state = (state + e * step) % n
            continue
        if e == 1:
            out.append((state, j, 1))
            state = (state + step) % n
        else:
            state = (state - step) % n
            out.append((state, j, -1))
    return out


def product_word(b: BranchData, power: int) -> list:
    """(g_0 g_1 ... g_k)^power as a list of (j, +1)."""
    return [(j, 1) for _ in range(power) for j in range(b.k + 1)]


def power_relation(b: BranchData, i: int, j: int) -> list:
    """g0^i g_j^{r_j} g0^{-i} rewritten: delta_{i,j} delta_{i+m_j,j} ... ."""
    r = inertia_orders(b)[j]
    return rewrite(b, [(j, 1)] * r, start=i)


def rs_generators(b: BranchData) -> RSPresentation:
    nb, rot, unit = normalize(b)
    n, k = nb.n, nb.k
    r = inertia_orders(nb)
    gens = [(i, j) for i in range(n) for j in range(1, k + 1)]
    eliminated = [(i, j) for i in range(n) for j in range(1, k + 1) if i < n // r[j]]
    eliminated.sort(key=lambda g: (g[0], g[1]))
    relations = [power_relation(nb, i, j) for j in range(1, k + 1) for i in range(n // r[j])]
    return RSPresentation(b, nb, rot, unit, gens, eliminated, relations)


# ---------------------------------------------------------------------------
# homology as a Z[x]-module


@dataclass(frozen=True)
class CyclicModuleSum:
    """Formal direct sum of Z[x]/(g) over monic summands g."""

    summands: tuple

    @property
    def rank(self) -> int:
        return sum(g.degree for g in self.summands)

    def charpoly(self) -> IntPoly:
        out = IntPoly((1,))
        for g in self.summands:
            out = out * g
        return out

    def x_matrix(self) -> list:
        """Block companion matrix of x, column convention (columns are images)."""
        N = self.rank
        M = [[0] * N for _ in range(N)]
        off = 0
        for g in self.summands:
            d = g.degree
            for c in range(d - 1):
                M[off + c + 1][off + c] = 1
            for r in range(d):
                M[off + r][off + d - 1] = -g[r]
            off += d
        return M

    def to_json(self) -> list:
        from .intpoly import poly_to_json
        return [poly_to_json(g) for g in self.summands]


def summand_poly(n: int, r: int) -> IntPoly:
    """1 + x^{n/r} + ... + x^{(r-1) n/r} = (x^n - 1) / (x^{n/r} - 1)."""
    return exact_quotient(x_pow_minus_one(n), x_pow_minus_one(n // r))


def homology_two_full(b: BranchData) -> CyclicModuleSum:
    r = inertia_orders(b)
    if r[0] != b.n or r[-1] != b.n:
        raise PreconditionTwoFull(f"need full ramification at 0 and infinity, inertia {r}")
    return CyclicModuleSum(tuple(summand_poly(b.n, rj) for rj in r[1:-1]))


def summand_factorization(mod: CyclicModuleSum, n: int) -> list:
    """Indices d with Phi_d dividing each summand."""
    Q = x_pow_minus_one(n)
    out = []
    for g in mod.summands:
        _, rem = divmod_exact(Q, g)
        if rem:
            raise NotDividing(f"{g} does not divide x^{n} - 1")
        ds = []
        for d in divisors(n):
            _, rem = divmod_exact(g, cyclotomic_poly(d))
            if not rem:
                ds.append(d)
        out.append(ds)
    return out


@dataclass
class OneFullHomology:
    presentation: RSPresentation
    group: FinAbelianGroup
    genus: int
    x_action: list

    @property
    def rank_matches(self) -> bool:
        return self.group.free_rank == 2 * self.genus and not self.group.torsion

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "genus": self.genus,
                "rank_matches": self.rank_matches, "x_action": self.x_action,
                "infinity_relation_count": len(self.presentation.infinity_relations)}


def abelianize(word: Sequence[RawLetter], index: dict) -> list:
    row = [0] * len(index)
    for i, j, e in word:
        row[index[(i, j)]] += e
    return row


def homology_one_full(b: BranchData) -> OneFullHomology:
    """H_1 from power relations and the rewritten (g_0 ... g_k)^{r_inf}."""
    r = inertia_orders(b)
    if b.k == 0 or r[0] != b.n or r[-1] == b.n:
        raise PreconditionOneFull(f"need r_0 = n > r_inf and k >= 1, inertia {r}")
    pres = rs_generators(b)
    nb = pres.data
    n = nb.n
    r_inf = inertia_orders(nb)[-1]
    pres.infinity_relations = [rewrite(nb, product_word(nb, r_inf), start=i) for i in range(n)]
    idx = pres.index()
    rows = [abelianize(power_relation(nb, i, j), idx)
            for j in range(1, nb.k + 1) for i in range(n)]
    rows += [abelianize(w, idx) for w in pres.infinity_relations]
    Q = QuotientGroup(rows, len(idx))
    x_rows = []
    if not Q.group.torsion:
        for a in range(len(Q.moduli)):
            e = [int(a == c) for c in range(len(Q.moduli))]
            v = Q.lift(e)
            shifted = [0] * len(v)
            for (i, j), t in idx.items():
                shifted[idx[((i + 1) % n, j)]] += v[t]
            x_rows.append(list(Q.coords(shifted)))
    # rows of x_rows are images (row convention); transpose to columns
    x_cols = [list(col) for col in zip(*x_rows)] if x_rows else []
    return OneFullHomology(pres, Q.group, genus(b), x_cols)


def one_full_charpoly(h: OneFullHomology) -> IntPoly:
    return charpoly(h.x_action) if h.x_action else IntPoly((1,))


# ---------------------------------------------------------------------------
# eigenspaces of holomorphic differentials


def eigenspace_dims(b: BranchData) -> list:
    """v(j) = -1 + sum_i frac(-j m_i / n) for j != 0, and v(0) = 0."""
    out = [0]
    for j in range(1, b.n):
        terms = [Fraction((-j * a) % b.n, b.n) for a in b.m]
        total = sum(terms)
        out.append(int(total) - 1 if total else 0)
    return out


def eigenvalue_multiplicity(b: BranchData, j: int) -> int:
    """Multiplicity of exp(2 pi i j / n) as an eigenvalue of x on H_1 (two full points)."""
    mod = homology_two_full(b)
    n = b.n
    return sum(1 for g in mod.summands if _has_root_power(g, n, j))


def _has_root_power(g: IntPoly, n: int, j: int) -> bool:
    order = n // math.gcd(n, j)
    _, rem = divmod_exact(g, cyclotomic_poly(order))
    return not rem
