"""Integer matrices, Smith/Hermite normal forms and finite abelian groups.

Matrices act on row vectors: a relation matrix has one relation per row and
one column per generator, and the group it presents is ``Z^cols / rowspace``.
All arithmetic uses Python integers, so there is no overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import NonMonic
from .intpoly import IntPoly, poly_mod, residue_vector


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(int(v) for r in rows for v in r))

    def to_rows(self) -> list:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


def as_rows(M) -> list:
    if isinstance(M, IntMatrix):
        return M.to_rows()
    return [list(r) for r in M]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B) -> list:
    A, B = as_rows(A), as_rows(B)
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner) if A[i][k]) for j in range(cols)]
            for i in range(len(A))]


def vecmat(v: Sequence[int], B) -> list:
    cols = len(B[0]) if B else 0
    out = [0] * cols
    for k, vk in enumerate(v):
        if vk:
            row = B[k]
            for j in range(cols):
                out[j] += vk * row[j]
    return out


def transpose(A) -> list:
    A = as_rows(A)
    return [list(col) for col in zip(*A)] if A else []


def det(A) -> int:
    from .intpoly import bareiss_det
    return bareiss_det(as_rows(A))


def matpow(A, k: int) -> list:
    n = len(A)
    result = identity(n)
    base = [list(r) for r in A]
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def poly_at_matrix(f: IntPoly, A) -> list:
    """Horner evaluation of an integer polynomial at a square matrix."""
    n = len(A)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(f.coeffs):
        acc = matmul(acc, A)
        for i in range(n):
            acc[i][i] += c
    return acc


def charpoly(A) -> IntPoly:
    """Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.

    Every division is exact for integer matrices.
    """
    A = as_rows(A)
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = matmul(A, M)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            M[i][i] += c_prev
        AM = matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        coeffs[n - k] = q
    return IntPoly(coeffs)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """Result of :func:`smith_normal_form`.

    ``U @ M @ V == D`` with ``U`` and ``V`` unimodular and ``D`` diagonal with
    ``diagonal[0] | diagonal[1] | ...``; ``V_inv`` is the inverse of ``V``.
    """

    diagonal: list
    rank: int
    U: list
    V: list
    V_inv: list
    shape: tuple

    @property
    def invariant_factors(self) -> list:
        return list(self.diagonal)

    def D(self) -> list:
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diagonal):
            D[i][i] = d
        return D


def smith_normal_form(M) -> SmithForm:
    A = as_rows(M)
    if isinstance(M, IntMatrix):
        m, n = M.rows, M.cols
    else:
        m = len(A)
        n = len(A[0]) if A else 0
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            ra, rs = A[dst], A[src]
            for k in range(n):
                if rs[k]:
                    ra[k] += q * rs[k]
            ua, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ua[k] += q * us[k]

    def add_col(dst, src, q):
        # col_dst += q * col_src; V_inv row_src -= q * row_dst
        if q:
            for row in A:
                if row[src]:
                    row[dst] += q * row[src]
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = Vi[src], Vi[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    diagonal = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = _round_div(A[i][t], p)
                    add_row(i, t, -q)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = _round_div(A[t][j], p)
                    add_col(j, t, -q)
                    if A[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t into the pivot
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        diagonal.append(A[t][t])
        t += 1
    return SmithForm(diagonal, len(diagonal), U, V, Vi, (m, n))


def _round_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b):
        q += 1 if (r > 0) == (b > 0) else -1
    return q


# ---------------------------------------------------------------------------
# Hermite normal form (internal)


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> list:
    """Row-style HNF of the lattice spanned by ``rows``.

    Returns the nonzero rows in echelon form with positive pivots and the
    entries above each pivot reduced into ``[0, pivot)``.  The result only
    depends on the lattice, which makes it a canonical key.
    """
    A = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            new = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    new.append(r)
                elif any(r):
                    rest.append(r)
            nz = new
        piv = nz[0]
        if piv[col] < 0:
            piv = [-v for v in piv]
        out.append((col, piv))
        A = rest
        col += 1
    # reduce entries above pivots
    for k in range(len(out)):
        ck, rk = out[k]
        for i in range(k):
            ci, ri = out[i]
            q = ri[ck] // rk[ck]
            if q:
                out[i] = (ci, [a - q * b for a, b in zip(ri, rk)])
    return [r for _, r in out]


def solve_left(A, t: Sequence[int]):
    """Return an integer row vector y with ``y @ A == t`` or None."""
    A = as_rows(A)
    if not A:
        return [] if not any(t) else None
    snf = smith_normal_form(A)
    tv = vecmat(t, snf.V)
    z = [0] * len(A)
    for i, d in enumerate(snf.diagonal):
        if tv[i] % d:
            return None
        z[i] = tv[i] // d
    if any(tv[snf.rank:]):
        return None
    return vecmat(z, snf.U)


def inverse_unimodular(A) -> list:
    """Integer inverse of a square matrix with determinant +-1 (U A V = I gives A^-1 = V U)."""
    A = as_rows(A)
    n = len(A)
    if not n:
        return []
    snf = smith_normal_form(A)
    if snf.rank != n or any(d != 1 for d in snf.diagonal):
        raise ValueError("matrix is not unimodular")
    return matmul(snf.V, snf.U)


def solve_triangular(basis: Sequence[Sequence[int]], t: Sequence[int]):
    """Solve ``y @ basis == t`` for a square upper-triangular integer basis.

    Returns None when no integral solution exists.
    """
    t = list(t)
    y = []
    for i, row in enumerate(basis):
        q, r = divmod(t[i], row[i])
        if r:
            return None
        y.append(q)
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    return y if not any(t) else None


# ---------------------------------------------------------------------------
# finite abelian groups


def _normalize_factors(factors: Iterable[int]) -> tuple:
    """Invariant factors (each >= 2, divisibility chain) of a product of cyclics."""
    fs = [abs(int(f)) for f in factors if abs(int(f)) != 1]
    if any(f == 0 for f in fs):
        raise ValueError("use free_rank for infinite cyclic factors")
    if not fs:
        return ()
    snf = smith_normal_form([[f if i == j else 0 for j in range(len(fs))] for i, f in enumerate(fs)])
    return tuple(d for d in snf.diagonal if d != 1)


@dataclass(frozen=True)
class FinAbelianGroup:
    """``Z^free_rank + Z/d_1 + ... + Z/d_s`` with ``d_1 | d_2 | ...``."""

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", _normalize_factors(self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def torsion(self) -> tuple:
        return self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self):
        """Group order, or ``None`` when the group is infinite."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __add__(self, other: "FinAbelianGroup") -> "FinAbelianGroup":
        return FinAbelianGroup(self.invariant_factors + other.invariant_factors,
                               self.free_rank + other.free_rank)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FinAbelianGroup":
        return cls(tuple(data.get("torsion", ())), int(data.get("free_rank", 0)))


def direct_sum(groups: Iterable[FinAbelianGroup]) -> FinAbelianGroup:
    total = FinAbelianGroup()
    for g in groups:
        total = total + g
    return total


class QuotientGroup:
    """``Z^ngens / rowspace(relations)`` with explicit SNF coordinates.

    ``coords(v)`` maps an integer vector to its canonical coordinates: one
    entry per nontrivial cyclic factor (reduced mod ``d``) followed by one
    entry per free factor.  ``lift(c)`` is a section of ``coords``.
    """

    def __init__(self, relations, ngens: int):
        rows = [list(r) for r in as_rows(relations)]
        if any(len(r) != ngens for r in rows):
            raise ValueError("relation length does not match the number of generators")
        self.ngens = ngens
        if rows:
            self.snf = smith_normal_form(rows)
        else:
            self.snf = SmithForm([], 0, [], identity(ngens), identity(ngens), (0, ngens))
        diag = self.snf.diagonal
        self._cols = [i for i, d in enumerate(diag) if d != 1] + list(range(self.snf.rank, ngens))
        self.moduli = [diag[i] if i < self.snf.rank else 0 for i in self._cols]
        self.group = FinAbelianGroup(tuple(d for d in self.moduli if d), self.moduli.count(0))

    @property
    def order(self):
        return self.group.order

    def coords(self, v: Sequence[int]) -> tuple:
        w = vecmat(v, self.snf.V)
        return tuple(w[c] % d if d else w[c] for c, d in zip(self._cols, self.moduli))

    def lift(self, c: Sequence[int]) -> list:
        w = [0] * self.ngens
        for col, value in zip(self._cols, c):
            w[col] = value
        return vecmat(w, self.snf.V_inv)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.coords(v))

    def element_order(self, v: Sequence[int]) -> int:
        """Additive order of the class of ``v``; 0 if it has infinite order."""
        order = 1
        for c, d in zip(self.coords(v), self.moduli):
            if d == 0:
                if c:
                    return 0
            else:
                order = math.lcm(order, d // math.gcd(d, c))
        return order


def group_from_presentation(relations, ngens: int | None = None) -> FinAbelianGroup:
    """Cokernel of the relation matrix (rows are relations)."""
    if isinstance(relations, IntMatrix):
        ngens = relations.cols
    elif ngens is None:
        ngens = len(relations[0]) if len(relations) else 0
    return QuotientGroup(relations, ngens).group


def ideal_relations(f: IntPoly, extra_gens: Sequence[IntPoly]) -> list:
    """Rows ``x^i * g mod f`` presenting Z[x]/(f, g_1, ...) on 1, x, ..., x^(deg f - 1)."""
    if not f.is_monic() or f.degree < 1:
        raise NonMonic(f"modulus {f} must be monic of degree >= 1")
    deg = f.degree
    rows = []
    for g in extra_gens:
        r = poly_mod(g, f)
        for _ in range(deg):
            rows.append(residue_vector(r, f))
            r = poly_mod(IntPoly((0,) + r.coeffs), f)
    return rows


def ideal_quotient(f: IntPoly, extra_gens: Sequence[IntPoly]) -> QuotientGroup:
    return QuotientGroup(ideal_relations(f, extra_gens), f.degree)


def ideal_quotient_group(f: IntPoly, extra_gens: Sequence[IntPoly]) -> FinAbelianGroup:
    return ideal_quotient(f, extra_gens).group


def annihilator_of_one(f: IntPoly, extra_gens: Sequence[IntPoly]) -> int:
    """Least beta > 0 with beta in (f, g_1, ...), i.e. the order of the class of 1."""
    Q = ideal_quotient(f, extra_gens)
    e0 = [1] + [0] * (f.degree - 1)
    return Q.element_order(e0)


# ---------------------------------------------------------------------------
# subgroups of  Z/e_1 + ... + Z/e_r


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``Z/e_1 + ... + Z/e_r`` (all ``e_i >= 2``).

    Stored as the HNF basis of its preimage lattice in ``Z^r``; that basis is
    unique, so two subgroups are equal iff their ``basis`` fields are equal.
    """

    moduli: tuple
    basis: tuple = field(compare=True)

    @classmethod
    def generated_by(cls, gens: Iterable[Sequence[int]], moduli: Sequence[int]) -> "Subgroup":
        moduli = tuple(moduli)
        r = len(moduli)
        rows = [list(g) for g in gens]
        rows += [[e if i == j else 0 for j in range(r)] for i, e in enumerate(moduli)]
        H = hermite_normal_form(rows, r)
        return cls(moduli, tuple(tuple(row) for row in H))

    @property
    def order(self) -> int:
        idx = math.prod(self.basis[i][i] for i in range(len(self.moduli)))
        return math.prod(self.moduli) // idx

    def contains(self, v: Sequence[int]) -> bool:
        return solve_triangular(self.basis, v) is not None

    def group(self) -> FinAbelianGroup:
        """Isomorphism type of the subgroup itself."""
        r = len(self.moduli)
        rows = [solve_triangular(self.basis, [e if i == j else 0 for j in range(r)])
                for i, e in enumerate(self.moduli)]
        return group_from_presentation(rows, r)

    def generators(self) -> list:
        """Nonzero basis rows reduced mod the moduli (a generating set)."""
        out = []
        for row in self.basis:
            g = tuple(a % e for a, e in zip(row, self.moduli))
            if any(g):
                out.append(g)
        return out

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.generated_by(list(self.basis) + list(other.basis), self.moduli)

    def intersection_order(self, other: "Subgroup") -> int:
        return self.order * other.order // (self + other).order

    def coset_representatives(self):
        """One representative per coset of this subgroup in the ambient group."""
        r = len(self.moduli)
        ranges = [range(self.basis[i][i]) for i in range(r)]
        for t in product(*ranges):
            yield t

    def elements(self) -> list:
        """All elements (only sensible for small subgroups)."""
        seen = {tuple(0 for _ in self.moduli)}
        frontier = list(seen)
        gens = self.generators()
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    s = tuple((x + y) % e for x, y, e in zip(a, g, self.moduli))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return sorted(seen)

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli), "generators": [list(g) for g in self.generators()],
                "order": self.order}
