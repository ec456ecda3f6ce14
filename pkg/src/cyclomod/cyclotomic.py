"""Cyclotomic polynomials and the rings R_{d,m} = Z[x]/(Phi_d, Phi_m).

The group structure of R_{d,m} is always computed from an explicit ideal
presentation; the closed-form resultant rule is only used as a prediction to
compare against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime

from .abelian import FinAbelianGroup, ideal_quotient
from .errors import EqualIndices, NotCoprime, PDividesD, StructureError
from .intpoly import (
    IntPoly,
    ModPoly,
    discriminant,
    exact_quotient,
    gcd_mod_p,
    reduce_mod_p,
    resultant,
)


def _factor(n: int) -> dict:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return factorint(n)


def mobius(n: int) -> int:
    f = _factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in _factor(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def x_pow_minus_one(n: int) -> IntPoly:
    return IntPoly((-1,) + (0,) * (n - 1) + (1,))


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> IntPoly:
    """Phi_d from the Moebius product: multiply the mu=+1 factors, divide by the mu=-1 ones."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = IntPoly((1,))
    dens = []
    for e in divisors(d):
        mu = mobius(e)
        if mu == 1:
            num = num * x_pow_minus_one(d // e)
        elif mu == -1:
            dens.append(x_pow_minus_one(d // e))
    for den in dens:
        num = exact_quotient(num, den)
    return num


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    k, v = 1, a % n
    while v != 1:
        v = v * a % n
        k += 1
    return k


def is_generator(p: int, d: int) -> bool:
    """Whether p mod d generates the unit group (Z/d)*."""
    if math.gcd(p, d) != 1:
        raise NotCoprime(f"gcd({p}, {d}) != 1")
    return multiplicative_order(p, d) == euler_phi(d)


def prime_power_relation(d: int, m: int):
    """Return (p, k) if max(d,m) = p^k * min(d,m) with k >= 1, else None."""
    lo, hi = min(d, m), max(d, m)
    if hi % lo:
        return None
    q = hi // lo
    if q == 1:
        return None
    f = _factor(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def predicted_resultant(d: int, m: int) -> int:
    """|Res(Phi_d, Phi_m)| according to the closed form."""
    rel = prime_power_relation(d, m)
    if rel is None:
        return 1
    return rel[0] ** euler_phi(min(d, m))


def predicted_beta(d: int, m: int) -> int:
    rel = prime_power_relation(d, m)
    return rel[0] if rel else 1


@dataclass(frozen=True)
class RingStructure:
    d: int
    m: int
    group: FinAbelianGroup
    beta: int
    resultant: int
    classification: str
    p: int | None = None
    degree: int | None = None
    gcd_poly: ModPoly | None = None
    predicted_classification: str = ""

    @property
    def is_zero(self) -> bool:
        return self.classification == "Zero"

    @property
    def is_field(self) -> bool:
        return self.classification.startswith("Field")

    @property
    def has_nilpotents(self) -> bool:
        return self.classification.startswith("AlgebraWithNilpotents")

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def agrees_with_prediction(self) -> bool:
        return self.classification == self.predicted_classification

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "m": self.m,
            "order": self.order,
            "group": self.group.to_json(),
            "beta": self.beta,
            "resultant": self.resultant,
            "classification": self.classification,
            "predicted_classification": self.predicted_classification,
            "is_zero": self.is_zero,
            "is_field": self.is_field,
            "has_nilpotents": self.has_nilpotents,
        }
        if self.gcd_poly is not None:
            out["gcd_mod_p"] = list(self.gcd_poly.coeffs)
        return out


def predicted_classification(d: int, m: int) -> str:
    rel = prime_power_relation(d, m)
    if rel is None:
        return "Zero"
    p, _ = rel
    lo = min(d, m)
    if lo % p == 0:
        return f"AlgebraWithNilpotents({p})"
    if is_generator(p, lo):
        return f"Field({p},{euler_phi(lo)})"
    return f"DirectSumOfFields({p})"


def ring_structure(d: int, m: int) -> RingStructure:
    """Structure of R_{d,m}, derived from the ideal presentation.

    The classification is read off the computed data: the group decides
    whether the ring is zero, beta gives the characteristic p, and the gcd P
    of the reductions of Phi_d and Phi_m over F_p decides between field,
    product of fields and algebra with nilpotents (R_{d,m} = F_p[x]/(P)).
    """
    if d == m:
        raise EqualIndices(f"R_{{d,m}} needs d != m (got {d})")
    if d < 1 or m < 1:
        raise ValueError("indices must be positive")
    lo, hi = min(d, m), max(d, m)
    f, g = cyclotomic_poly(lo), cyclotomic_poly(hi)
    Q = ideal_quotient(f, [g])
    group = Q.group
    beta = Q.element_order([1] + [0] * (f.degree - 1))
    res = resultant(f, g)
    pred = predicted_classification(d, m)
    if group.is_trivial:
        return RingStructure(d, m, group, beta, res, "Zero", predicted_classification=pred)
    if not isprime(beta):
        raise StructureError(f"R_{{{d},{m}}} has unexpected characteristic {beta}")
    p = beta
    P = gcd_mod_p(reduce_mod_p(f, p), reduce_mod_p(g, p))
    if group.order != p ** P.degree:
        raise StructureError(f"R_{{{d},{m}}}: |group| = {group.order} but F_p[x]/(P) has order p^{P.degree}")
    if not P.is_squarefree():
        cls = f"AlgebraWithNilpotents({p})"
    elif P.is_irreducible():
        cls = f"Field({p},{P.degree})"
    else:
        cls = f"DirectSumOfFields({p})"
    return RingStructure(d, m, group, beta, res, cls, p, P.degree, P, pred)


@dataclass(frozen=True)
class ResultantCheck:
    d: int
    m: int
    computed_resultant: int
    predicted: int
    computed_beta: int
    predicted_beta: int

    @property
    def match(self) -> bool:
        return abs(self.computed_resultant) == self.predicted and self.computed_beta == self.predicted_beta

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "computed_resultant": self.computed_resultant,
                "predicted": self.predicted, "computed_beta": self.computed_beta,
                "predicted_beta": self.predicted_beta, "match": self.match}


def verify_resultant_theorem(d: int, m: int) -> ResultantCheck:
    fd, fm = cyclotomic_poly(d), cyclotomic_poly(m)
    lo = fd if fd.degree <= fm.degree else fm
    hi = fm if lo is fd else fd
    beta = ideal_quotient(lo, [hi]).element_order([1] + [0] * (lo.degree - 1))
    return ResultantCheck(d, m, abs(resultant(fd, fm)), predicted_resultant(d, m),
                          beta, predicted_beta(d, m))


def discriminant_product_check(n: int) -> dict:
    """Compare |Disc(x^n - 1)| with n^n and with the cyclotomic product.

    Since Disc(fg) = Disc(f) Disc(g) Res(f, g)^2, the product over pairs of
    divisors enters squared.  The unsquared product is reported as well.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    ds = divisors(n)
    disc_q = abs(discriminant(x_pow_minus_one(n)))
    res_prod = 1
    for i, d in enumerate(ds):
        for m in ds[i + 1:]:
            res_prod *= abs(resultant(cyclotomic_poly(d), cyclotomic_poly(m)))
    disc_prod = 1
    for d in ds:
        disc_prod *= abs(discriminant(cyclotomic_poly(d)))
    product = res_prod**2 * disc_prod
    return {
        "n": n,
        "disc_Q": disc_q,
        "n_pow_n": n**n,
        "pair_resultant_product": res_prod,
        "disc_phi_product": disc_prod,
        "product": product,
        "unsquared_product": res_prod * disc_prod,
        "match": disc_q == n**n == product,
    }


def reduced_power_identity_check(d: int, p: int, k: int) -> dict:
    """Check Psi_{p^k d} = Psi_d^((p-1) p^(k-1)) in F_p[x] for p not dividing d."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if d % p == 0:
        raise PDividesD(f"{p} divides {d}")
    lhs = reduce_mod_p(cyclotomic_poly(p**k * d), p)
    exponent = (p - 1) * p ** (k - 1)
    rhs = reduce_mod_p(cyclotomic_poly(d), p) ** exponent
    return {"d": d, "p": p, "k": k, "exponent": exponent,
            "lhs": list(lhs.coeffs), "rhs": list(rhs.coeffs), "match": lhs == rhs}
