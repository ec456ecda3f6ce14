"""Dense univariate polynomials over Z and over prime fields F_p.

Coefficient sequences are stored lowest degree first and are always kept in
canonical form (no trailing zeros), so structural equality is polynomial
equality.  The zero polynomial has degree ``-inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime

from .errors import (
    ConstantPolynomial,
    DivisionByZero,
    ModulusMismatch,
    NonMonicDivisor,
    NotPrime,
    ZeroPolynomial,
)

NEG_INF = -math.inf


def _trim(coeffs: Iterable[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return add(self, other)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return add(self, -other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(other * c for c in self.coeffs)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def to_json(self) -> list:
        return list(self.coeffs)


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    return IntPoly(a[i] + b[i] for i in range(n))


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a.coeffs or not b.coeffs:
        return IntPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                out[i + j] += ai * bj
    return IntPoly(out)


def divmod_exact(a: IntPoly, b: IntPoly) -> tuple[IntPoly, IntPoly]:
    """Divide by a monic polynomial; quotient and remainder stay integral."""
    if b.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if not b.is_monic():
        raise NonMonicDivisor(f"divisor {b} is not monic")
    r = list(a.coeffs)
    db = len(b.coeffs) - 1
    if len(r) - 1 < db:
        return IntPoly(), a
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c:
            q[k - db] = c
            for i, bi in enumerate(b.coeffs):
                r[k - db + i] -= c * bi
    return IntPoly(q), IntPoly(r[:db])


def poly_mod(a: IntPoly, b: IntPoly) -> IntPoly:
    return divmod_exact(a, b)[1]


def exact_quotient(a: IntPoly, b: IntPoly) -> IntPoly:
    q, r = divmod_exact(a, b)
    if not r.is_zero():
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def residue_vector(a: IntPoly, f: IntPoly) -> list:
    """Coefficients of ``a mod f`` on the basis 1, x, ..., x^(deg f - 1)."""
    r = poly_mod(a, f)
    deg = len(f.coeffs) - 1
    return [r[i] for i in range(deg)]


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b."""
    if b.is_zero():
        raise DivisionByZero("pseudo-division by zero")
    db = b.degree
    r = list(a.coeffs)
    if len(r) - 1 < db:
        return a
    lb = b.lc
    e = len(r) - 1 - db + 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [lb * v for v in r]
        for i, bi in enumerate(b.coeffs):
            r[k - db + i] -= c * bi
        e -= 1
    # remaining factor keeps the lc(b)^(deg a - deg b + 1) normalization
    return IntPoly(v * lb**e for v in r[:db])


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Res_x(a, b) by the subresultant polynomial remainder sequence.

    Convention: Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots of a,
    which is the determinant of the Sylvester matrix with the rows of ``a``
    first.
    """
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    A, B = a, b
    ca, cb = A.content(), B.content()
    A = IntPoly(c // ca for c in A.coeffs)
    B = IntPoly(c // cb for c in B.coeffs)
    t = ca ** B.degree * cb ** A.degree
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return s * t * B.lc ** A.degree
    g = h = 1
    while True:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = prem(A, B)
        A = B
        divisor = g * h**delta
        B = IntPoly(c // divisor for c in R.coeffs)
        if B.is_zero():
            return 0
        g = A.lc
        h = g**delta // h ** (delta - 1) if delta else h
        if B.degree == 0:
            break
    dA = A.degree
    h = B.lc**dA // h ** (dA - 1) if dA else h
    return s * t * h


def sylvester_matrix(a: IntPoly, b: IntPoly) -> list:
    m, n = a.degree, b.degree
    size = m + n
    rows = []
    ra = list(reversed(a.coeffs))
    rb = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([0] * i + ra + [0] * (size - i - len(ra)))
    for i in range(m):
        rows.append([0] * i + rb + [0] * (size - i - len(rb)))
    return rows


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sylvester_resultant(a: IntPoly, b: IntPoly) -> int:
    if a.is_zero() or b.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    if a.degree == 0 and b.degree == 0:
        return 1
    return bareiss_det(sylvester_matrix(a, b))


def discriminant(a: IntPoly) -> int:
    """(-1)^(d(d-1)/2) * Res(a, a') / lc(a)."""
    if a.is_zero() or a.degree < 1:
        raise ConstantPolynomial("discriminant needs degree >= 1")
    d = a.degree
    if d == 1:
        return 1
    r = resultant(a, a.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(r, a.lc)
    assert rem == 0
    return sign * q


# ---------------------------------------------------------------------------
# F_p[x]


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) % self.p for c in self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "ModPoly") -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"moduli {self.p} and {other.p} differ")

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        self._same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.p, [self[i] + other[i] for i in range(n)])

    def __neg__(self):
        return ModPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._same(other)
        if not self.coeffs or not other.coeffs:
            return ModPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ModPoly(self.p, out)

    def __pow__(self, k: int):
        result = ModPoly(self.p, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "ModPoly":
        if self.is_zero():
            return self
        inv = pow(self.lc, -1, self.p)
        return ModPoly(self.p, [c * inv for c in self.coeffs])

    def divmod(self, other: "ModPoly"):
        self._same(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        p = self.p
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return ModPoly(p), self
        inv = pow(other.lc, -1, p)
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] * inv % p
            if c:
                q[k - db] = c
                for i, b in enumerate(other.coeffs):
                    r[k - db + i] = (r[k - db + i] - c * b) % p
        return ModPoly(p, q), ModPoly(p, r[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, [i * c for i, c in enumerate(self.coeffs) if i])

    def powmod(self, k: int, modulus: "ModPoly") -> "ModPoly":
        result = ModPoly(self.p, (1,)) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def is_squarefree(self) -> bool:
        return gcd_mod_p(self, self.derivative()).degree == 0

    def is_irreducible(self) -> bool:
        """Ben-Or test: no irreducible factor of degree <= deg/2."""
        d = self.degree
        if d < 1:
            return False
        f = self.monic()
        x = ModPoly(self.p, (0, 1))
        xp = x
        for _ in range(d // 2):
            xp = xp.powmod(self.p, f)
            if gcd_mod_p(f, xp - x).degree != 0:
                return False
        return True

    def __str__(self):
        return f"{format_poly(self.coeffs)} (mod {self.p})"


def reduce_mod_p(a: IntPoly, p: int) -> ModPoly:
    _check_prime(p)
    return ModPoly(p, a.coeffs)


def gcd_mod_p(a: ModPoly, b: ModPoly) -> ModPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    a._same(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# ---------------------------------------------------------------------------
# text format


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    """Parse strings such as ``"x^4 - x^2 + 1"`` or ``"2*x - 3"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    coeffs: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    top = max(coeffs)
    return IntPoly(coeffs.get(i, 0) for i in range(top + 1))


def poly_from_json(value) -> IntPoly:
    """Accept a coefficient list, a text string, or the ``{"coeffs", "text"}`` object."""
    if isinstance(value, dict):
        value = value["coeffs"]
    if isinstance(value, str):
        return parse_poly(value)
    return IntPoly(int(v) for v in value)


def poly_to_json(a: IntPoly) -> dict:
    return {"coeffs": list(a.coeffs), "text": str(a)}
