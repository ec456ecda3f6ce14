"""Generalized Chinese remainder sequence and R(n)-lattices.

For pairwise coprime monic f_1, ..., f_k in Z[x] the sequence

    0 -> Z[x]/(f_1 ... f_k) -> (+)_i Z[x]/(f_i) -> (+)_{i<j} Z[x]/(f_i, f_j) -> 0

is exact.  Everything here is checked on explicit integer presentations on
monomial bases, so each claim is verified rather than assumed.

Lattices over R(n) = Z[x]/(x^n - 1) are described by free R_d-modules
Lambda_d = R_d^{rho_d} together with a finite subgroup of
(+)_d Lambda_d / (Q_n/Phi_d) Lambda_d; :class:`FiniteZxModule` is that ambient
group with its x-action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .abelian import (
    FinAbelianGroup,
    QuotientGroup,
    Subgroup,
    direct_sum,
    group_from_presentation,
    hermite_normal_form,
    ideal_quotient,
    ideal_quotient_group,
    matmul,
    solve_left,
    solve_triangular,
    vecmat,
)
from .cyclotomic import cyclotomic_poly, divisors, euler_phi, x_pow_minus_one
from .errors import (
    ConditionAViolated,
    ConditionBViolated,
    InfiniteQuotient,
    MalformedDatum,
    NonMonic,
    NotCoprime,
)
from .intpoly import IntPoly, exact_quotient, poly_mod, residue_vector, resultant


def _check_list(f_list: Sequence[IntPoly]) -> None:
    if len(f_list) < 2:
        raise ValueError("need at least two polynomials")
    for f in f_list:
        if not f.is_monic() or f.degree < 1:
            raise NonMonic(f"{f} is not monic of positive degree")
    for i in range(len(f_list)):
        for j in range(i + 1, len(f_list)):
            if resultant(f_list[i], f_list[j]) == 0:
                raise NotCoprime(f"f_{i} and f_{j} share a root")


def _product(fs: Sequence[IntPoly]) -> IntPoly:
    out = IntPoly((1,))
    for f in fs:
        out = out * f
    return out


def crt_map_relations(f_list: Sequence[IntPoly]) -> list:
    """Image of the monomial basis of Z[x]/(F) in (+) Z[x]/(f_i), as rows."""
    F = _product(f_list)
    rows = []
    for t in range(F.degree):
        mono = IntPoly.monomial(t)
        row = []
        for f in f_list:
            row.extend(residue_vector(mono, f))
        rows.append(row)
    return rows


def crt_cokernel(f_list: Sequence[IntPoly]) -> FinAbelianGroup:
    """Cokernel N of Z[x]/(f_1...f_k) -> (+) Z[x]/(f_i)."""
    _check_list(f_list)
    ngens = sum(f.degree for f in f_list)
    return group_from_presentation(crt_map_relations(f_list), ngens)


def pairwise_sum(f_list: Sequence[IntPoly]) -> FinAbelianGroup:
    return direct_sum(
        ideal_quotient_group(f_list[i], [f_list[j]])
        for i in range(len(f_list)) for j in range(i + 1, len(f_list)))


def verify_crt_isomorphism(f_list: Sequence[IntPoly]) -> dict:
    N = crt_cokernel(f_list)
    M = pairwise_sum(f_list)
    return {"coker": N.to_json(), "direct_sum": M.to_json(),
            "coker_order": N.order, "direct_sum_order": M.order, "match": N == M}


def quotient_decomposition_check(f_list: Sequence[IntPoly]) -> dict:
    """Z[x]/(f_1, f_2...f_k) against (+)_{j>=2} Z[x]/(f_1, f_j)."""
    _check_list(f_list)
    f1, rest = f_list[0], list(f_list[1:])
    left = ideal_quotient_group(f1, [_product(rest)])
    right = direct_sum(ideal_quotient_group(f1, [g]) for g in rest)
    return {"left": left.to_json(), "right": right.to_json(), "order": left.order,
            "match": left == right}


def lemma_order_check(f: IntPoly, h: IntPoly, g: IntPoly) -> dict:
    """|Z[x]/(f, gh)| = |Z[x]/(f, h)| * |Z[x]/(f, g)| when all three are finite."""
    groups = {
        "f_h": ideal_quotient_group(f, [h]),
        "f_gh": ideal_quotient_group(f, [g * h]),
        "f_g": ideal_quotient_group(f, [g]),
    }
    out = {k: v.to_json() for k, v in groups.items()}
    infinite = [k for k, v in groups.items() if not v.is_finite]
    if infinite:
        out["skipped"] = True
        out["diagnostic"] = f"{InfiniteQuotient.__name__}: infinite quotient(s) {', '.join(infinite)}"
        out["match"] = None
        return out
    out["skipped"] = False
    out["match"] = groups["f_gh"].order == groups["f_h"].order * groups["f_g"].order
    return out


def filtration_order_check(f_list: Sequence[IntPoly]) -> dict:
    """|N| = prod_i |Z[x]/(f_i, f_{i+1} ... f_k)|."""
    N = crt_cokernel(f_list)
    orders = [ideal_quotient_group(f_list[i], [_product(f_list[i + 1:])]).order
              for i in range(len(f_list) - 1)]
    return {"coker_order": N.order, "graded_orders": orders,
            "match": N.order == math.prod(orders)}


def divisor_polys(n: int) -> list:
    return [cyclotomic_poly(d) for d in divisors(n)]


def cofactor(n: int, d: int) -> IntPoly:
    """Q_n / Phi_d."""
    return exact_quotient(x_pow_minus_one(n), cyclotomic_poly(d))


def psi_cokernel_check(n: int) -> dict:
    """Orders and structure of Coker(psi), Coker(i), Coker(j) for R(n)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    ds = divisors(n)
    blocks = {d: ideal_quotient_group(cyclotomic_poly(d), [cofactor(n, d)]) for d in ds}
    coker_psi = direct_sum(blocks.values())
    coker_i = crt_cokernel(divisor_polys(n))
    Qn = x_pow_minus_one(n)
    rows = []
    for d in ds:
        c = cofactor(n, d)
        for t in range(euler_phi(d)):
            rows.append(residue_vector(IntPoly.monomial(t) * c, Qn))
    coker_j = group_from_presentation(rows, n)
    # Coker(psi) block d against (+)_{d' != d} R_{d,d'}
    pair_sum = direct_sum(
        ideal_quotient_group(cyclotomic_poly(min(d, e)), [cyclotomic_poly(max(d, e))])
        for d in ds for e in ds if d != e)
    return {
        "n": n,
        "block_orders": {str(d): g.order for d, g in blocks.items()},
        "coker_psi_order": coker_psi.order,
        "coker_i_order": coker_i.order,
        "coker_j_order": coker_j.order,
        "coker_psi": coker_psi.to_json(),
        "coker_i": coker_i.to_json(),
        "coker_j": coker_j.to_json(),
        "psi_is_double": coker_psi.order == coker_i.order**2,
        "j_iso_i": coker_j == coker_i,
        "psi_iso_pairs": coker_psi == pair_sum,
        "match": coker_psi.order == coker_i.order**2 and coker_j == coker_i and coker_psi == pair_sum,
    }


# ---------------------------------------------------------------------------
# the ambient finite module  (+)_d (R_d / (Q_n/Phi_d))^{rho_d}


def _mult_matrix(c: IntPoly, f: IntPoly) -> list:
    """Row i = coefficients of x^i * c mod f (multiplication by c, row convention)."""
    return [residue_vector(IntPoly.monomial(i) * c, f) for i in range(f.degree)]


@dataclass
class _Block:
    d: int
    copy: int
    phi: IntPoly
    quotient: QuotientGroup
    x_matrix: list
    c_matrix: list
    flat: slice
    coords: slice


class FiniteZxModule:
    """The finite group (+)_d (R_d/(Q_n/Phi_d))^{rho_d} with multiplication by x.

    Elements are flat integer vectors: for each divisor d (ascending) and each
    copy, the coefficients of a residue polynomial of degree < phi(d).  The
    JSON form is ``{"d": [[c0, c1, ...], ...]}`` with one list per copy.
    """

    def __init__(self, n: int, ranks: dict):
        if n < 1:
            raise MalformedDatum("n must be positive")
        ds = divisors(n)
        extra = set(int(d) for d in ranks) - set(ds)
        if extra:
            raise MalformedDatum(f"ranks given for non-divisors {sorted(extra)} of {n}")
        self.n = n
        self.ranks = {d: int(ranks.get(d, 0)) for d in ds}
        if any(r < 0 for r in self.ranks.values()):
            raise MalformedDatum("ranks must be nonnegative")
        self.blocks: list[_Block] = []
        flat = coord = 0
        for d in ds:
            rho = self.ranks[d]
            if not rho:
                continue
            phi = cyclotomic_poly(d)
            c = cofactor(n, d)
            Q = ideal_quotient(phi, [c])
            X = _mult_matrix(IntPoly.x(), phi)
            C = _mult_matrix(c, phi)
            for k in range(rho):
                k_coords = len(Q.moduli)
                self.blocks.append(_Block(d, k, phi, Q, X, C, slice(flat, flat + phi.degree),
                                          slice(coord, coord + k_coords)))
                flat += phi.degree
                coord += k_coords
        self.dim = flat
        self.moduli = tuple(m for b in self.blocks for m in b.quotient.moduli)
        self._x_coords = None

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def zero(self) -> list:
        return [0] * self.dim

    def coords(self, v: Sequence[int]) -> tuple:
        out = []
        for b in self.blocks:
            out.extend(b.quotient.coords(v[b.flat]))
        return tuple(out)

    def lift(self, c: Sequence[int]) -> list:
        v = []
        for b in self.blocks:
            v.extend(b.quotient.lift(c[b.coords]))
        return v

    def x_times(self, v: Sequence[int]) -> list:
        out = []
        for b in self.blocks:
            out.extend(vecmat(v[b.flat], b.x_matrix))
        return out

    def x_matrix_coords(self) -> list:
        """Matrix of x on coordinates (row convention, entries mod moduli)."""
        if self._x_coords is None:
            rows = []
            r = len(self.moduli)
            for i in range(r):
                e = [int(i == j) for j in range(r)]
                rows.append(list(self.coords(self.x_times(self.lift(e)))))
            self._x_coords = rows
        return self._x_coords

    def x_coords(self, c: Sequence[int]) -> tuple:
        X = self.x_matrix_coords()
        w = vecmat(c, X) if X else []
        return tuple(a % m for a, m in zip(w, self.moduli))

    def divisor_coord_ranges(self) -> dict:
        out: dict = {}
        for b in self.blocks:
            lo, hi = out.get(b.d, (b.coords.start, b.coords.stop))
            out[b.d] = (min(lo, b.coords.start), max(hi, b.coords.stop))
        return out

    def block_subgroup(self, d: int) -> Subgroup:
        lo, hi = self.divisor_coord_ranges().get(d, (0, 0))
        r = len(self.moduli)
        gens = [[int(i == j) for j in range(r)] for i in range(lo, hi)]
        return Subgroup.generated_by(gens, self.moduli)

    def subgroup(self, elements: Sequence[Sequence[int]]) -> Subgroup:
        return Subgroup.generated_by([self.coords(v) for v in elements], self.moduli)

    # -- conversions ------------------------------------------------------

    def from_blocks(self, blocks: dict) -> list:
        v = self.zero()
        seen = {}
        for key, copies in blocks.items():
            d = int(key)
            if d not in self.ranks or self.ranks[d] == 0:
                if any(any(int(a) for a in poly) for poly in copies):
                    raise MalformedDatum(f"element has a nonzero component on block {d} of rank 0")
                continue
            if len(copies) != self.ranks[d]:
                raise MalformedDatum(f"block {d} needs {self.ranks[d]} residues, got {len(copies)}")
            seen[d] = copies
        for b in self.blocks:
            if b.d in seen:
                poly = IntPoly(int(a) for a in seen[b.d][b.copy])
                v[b.flat] = residue_vector(poly, b.phi)
        return v

    def to_blocks(self, v: Sequence[int]) -> dict:
        out: dict = {}
        for b in self.blocks:
            out.setdefault(str(b.d), []).append(list(v[b.flat]))
        return out

    def pair_quotient(self, d: int, e: int) -> QuotientGroup:
        return _pair_quotient(min(d, e), max(d, e))

    def pair_component(self, v: Sequence[int], d: int, copy: int, e: int) -> tuple:
        """Class of block (d, copy) of ``v`` in R_{d,e}."""
        b = self._block(d, copy)
        lo = cyclotomic_poly(min(d, e))
        poly = poly_mod(IntPoly(v[b.flat]), lo)
        return self.pair_quotient(d, e).coords(residue_vector(poly, lo))

    def _block(self, d: int, copy: int) -> _Block:
        for b in self.blocks:
            if b.d == d and b.copy == copy:
                return b
        raise MalformedDatum(f"no block ({d}, copy {copy})")

    def from_pairs(self, pairs: Sequence) -> list:
        """Element with prescribed components in the rings R_{d,e}.

        ``pairs`` holds tuples ``(d, e, value)`` or ``(d, e, value, copy)``
        where ``value`` is a polynomial (coefficient list) read in R_{d,e}.
        Components not mentioned are zero.
        """
        wanted: dict = {}
        for item in pairs:
            d, e, value = int(item[0]), int(item[1]), item[2]
            copy = int(item[3]) if len(item) > 3 else 0
            if d == e or self.n % e:
                raise MalformedDatum(f"bad pair ({d}, {e}) for n={self.n}")
            wanted.setdefault((d, copy), {})[e] = IntPoly(int(a) for a in value)
        v = self.zero()
        for (d, copy), comps in wanted.items():
            b = self._block(d, copy)
            v[b.flat] = self._solve_block(b, comps)
        return v

    def _solve_block(self, b: _Block, comps: dict) -> list:
        others = [e for e in divisors(self.n) if e != b.d]
        moduli = []
        cols = []
        target = []
        for e in others:
            Q = self.pair_quotient(b.d, e)
            lo = cyclotomic_poly(min(b.d, e))
            cols.append((Q, lo))
            moduli.extend(Q.moduli)
            val = comps.get(e, IntPoly())
            target.extend(Q.coords(residue_vector(poly_mod(val, lo), lo)))
        rows = []
        for i in range(b.phi.degree):
            row = []
            for Q, lo in cols:
                row.extend(Q.coords(residue_vector(IntPoly.monomial(i), lo)))
            rows.append(row)
        r = len(moduli)
        rows += [[m if i == j else 0 for j in range(r)] for i, m in enumerate(moduli)]
        if not rows or r == 0:
            return [0] * b.phi.degree
        y = solve_left(rows, target)
        if y is None:
            raise MalformedDatum(f"no element of block {b.d} has the requested components")
        return residue_vector(IntPoly(y[:b.phi.degree]), b.phi)

    def element_from_json(self, data) -> list:
        if isinstance(data, dict) and "pairs" in data:
            return self.from_pairs(data["pairs"])
        if isinstance(data, dict) and "torus" in data:
            return self.from_torus(data["torus"])[0]
        if isinstance(data, dict) and "blocks" in data:
            return self.from_blocks(data["blocks"])
        if isinstance(data, dict):
            return self.from_blocks(data)
        raise MalformedDatum(f"cannot read element {data!r}")

    def from_torus(self, torus: dict):
        """Read a torsion point of (+)_d A_d given in the standard basis of Lambda_d.

        Returns ``(vector, contained)`` where ``contained`` says whether the
        point lies in (Phi_d/Q_n) Lambda_d / Lambda_d for every block.  A point
        outside is mapped to the zero vector on the offending block.
        """
        v = self.zero()
        contained = True
        for key, copies in torus.items():
            d = int(key)
            if self.ranks.get(d, 0) != len(copies):
                raise MalformedDatum(f"block {d} needs {self.ranks.get(d, 0)} torus points")
            for k, point in enumerate(copies):
                b = self._block(d, k)
                q = [Fraction(a) for a in point] + [Fraction(0)] * (b.phi.degree - len(point))
                u = [sum(q[i] * b.c_matrix[i][j] for i in range(len(q))) for j in range(b.phi.degree)]
                if all(x.denominator == 1 for x in u):
                    v[b.flat] = [int(x) for x in u]
                else:
                    contained = False
        return v, contained


def _pair_quotient_uncached(lo: int, hi: int) -> QuotientGroup:
    return ideal_quotient(cyclotomic_poly(lo), [cyclotomic_poly(hi)])


_PAIR_CACHE: dict = {}


def _pair_quotient(lo: int, hi: int) -> QuotientGroup:
    key = (lo, hi)
    Q = _PAIR_CACHE.get(key)
    if Q is None:
        Q = _PAIR_CACHE.setdefault(key, _pair_quotient_uncached(lo, hi))
    return Q


def r0_submodule_check(n: int) -> dict:
    """R(n)/M' inside R'/M' and the symmetric tuples of (+)_{d != d'} R_{d,d'}."""
    ds = divisors(n)
    mod = FiniteZxModule(n, {d: 1 for d in ds})
    images = []
    for t in range(n):
        v = []
        for b in mod.blocks:
            v.extend(residue_vector(IntPoly.monomial(t), b.phi))
        images.append(v)
    H = mod.subgroup(images)
    pairs = [(d, e) for d in ds for e in ds if d != e]
    pair_moduli = []
    for d, e in pairs:
        pair_moduli.extend(mod.pair_quotient(d, e).moduli)

    def reduce_all(v):
        out = []
        for d, e in pairs:
            out.extend(mod.pair_component(v, d, 0, e))
        return out

    symmetric = True
    for v in images:
        for d, e in pairs:
            if mod.pair_component(v, d, 0, e) != mod.pair_component(v, e, 0, d):
                symmetric = False
    ambient_gens = [mod.lift([int(i == j) for j in range(len(mod.moduli))])
                    for i in range(len(mod.moduli))]
    full_image = Subgroup.generated_by([reduce_all(v) for v in ambient_gens], pair_moduli)
    pair_orders = [_pair_quotient(d, e).order for d, e in pairs if d < e]
    sym_order = math.prod(pair_orders)
    image_r = Subgroup.generated_by([reduce_all(v) for v in images], pair_moduli)
    return {
        "n": n,
        "ambient_order": mod.order,
        "image_order": H.order,
        "index": mod.order // H.order,
        "symmetric_order": sym_order,
        "reduction_is_isomorphism": full_image.order == mod.order == math.prod(pair_moduli),
        "image_in_symmetric": symmetric,
        "image_onto_symmetric": symmetric and image_r.order == sym_order,
        # the pair reduction is only an isomorphism when the blocks split naturally,
        # so surjectivity onto symmetric tuples is informational
        "match": H.order == sym_order and symmetric,
    }


# ---------------------------------------------------------------------------
# subgroups Lambda^0 and lattice reconstruction


@dataclass
class SubgroupReport:
    A: bool
    B: bool
    order: int
    group: FinAbelianGroup
    failing_divisors: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"A": self.A, "B": self.B, "order": self.order, "group": self.group.to_json(),
                "failing_divisors": self.failing_divisors}


def validate_subgroup(module: FiniteZxModule, gens: Sequence[Sequence[int]]) -> SubgroupReport:
    """(A) x-stability and (B) trivial intersection with every divisor block."""
    H = module.subgroup(gens)
    A = all(H.contains(module.coords(module.x_times(g))) for g in gens)
    failing = [d for d in module.divisor_coord_ranges()
               if H.intersection_order(module.block_subgroup(d)) != 1]
    return SubgroupReport(A, not failing, H.order, H.group(), failing)


def subgroup_is_valid(module: FiniteZxModule, H: Subgroup) -> bool:
    """(A) and (B) for a subgroup given directly in coordinates."""
    for g in H.generators():
        if not H.contains(module.x_coords(g)):
            return False
    return all(H.intersection_order(module.block_subgroup(d)) == 1
               for d in module.divisor_coord_ranges())


@dataclass
class Lattice:
    """A lattice Lambda with (+) Lambda_d <= Lambda <= (+) (Phi_d/Q_n) Lambda_d.

    Coordinates: on each block, the basis (Q_n/Phi_d)^{-1} x^i of
    (Phi_d/Q_n) Lambda_d, in which Lambda_d is the row space of the
    multiplication-by-(Q_n/Phi_d) matrix and x acts by the companion matrix.
    """

    module: FiniteZxModule
    basis: list
    x_action: list
    index: int
    quotient: FinAbelianGroup
    block_rows: list

    @property
    def rank(self) -> int:
        return len(self.basis)

    def rational_basis(self) -> list:
        """Basis rows in the standard coordinates x^i e_k of (+) Lambda_d (x) Q."""
        out = []
        for row in self.basis:
            new = []
            for b in self.module.blocks:
                new.extend(_solve_rational_left(b.c_matrix, row[b.flat]))
            out.append(new)
        return out

    def to_json(self) -> dict:
        return {"rank": self.rank, "basis": self.basis, "x_action": self.x_action,
                "index": self.index, "quotient": self.quotient.to_json()}


def _solve_rational_left(C: list, u: Sequence[int]) -> list:
    n = len(C)
    # solve y C = u  <=>  C^T y^T = u^T
    A = [[Fraction(C[j][i]) for j in range(n)] + [Fraction(u[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [a / pv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def lattice_from_data(module: FiniteZxModule, gens: Sequence[Sequence[int]]) -> Lattice:
    """Integral basis of Lambda = (+) Lambda_d + <lifts of gens> and the matrix of x."""
    report = validate_subgroup(module, gens)
    if not report.A:
        raise ConditionAViolated("generated subgroup is not stable under x")
    if not report.B:
        raise ConditionBViolated(f"subgroup meets blocks {report.failing_divisors}")
    N = module.dim
    block_rows = []
    for b in module.blocks:
        for row in b.c_matrix:
            full = [0] * N
            full[b.flat] = row
            block_rows.append(full)
    rows = block_rows + [list(g) for g in gens]
    B = hermite_normal_form(rows, N)
    assert len(B) == N
    X = [[0] * N for _ in range(N)]
    for b in module.blocks:
        for i in range(b.phi.degree):
            X[b.flat.start + i][b.flat] = b.x_matrix[i]
    BX = matmul(B, X)
    M = []
    for row in BX:
        y = solve_triangular(B, row)
        if y is None:
            raise ConditionAViolated("x does not preserve the reconstructed lattice")
        M.append(y)
    K = [solve_triangular(B, r) for r in block_rows]
    quotient = group_from_presentation(K, N)
    det_blocks = 1
    for b in module.blocks:
        det_blocks *= b.quotient.order
    det_B = math.prod(B[i][i] for i in range(N))
    return Lattice(module, B, M, det_blocks // det_B, quotient, K)
