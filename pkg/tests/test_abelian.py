import itertools
import math

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import invariant_factors

from cyclomod.abelian import (
    FinAbelianGroup,
    QuotientGroup,
    Subgroup,
    charpoly,
    det,
    group_from_presentation,
    hermite_normal_form,
    identity,
    ideal_quotient_group,
    inverse_unimodular,
    matmul,
    smith_normal_form,
)
from cyclomod.intpoly import IntPoly


def matrices(max_rows=4, max_cols=4, lo=-12, hi=12):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def nonzero_invariants(M):
    facs = invariant_factors(sympy.Matrix(M), domain=sympy.ZZ)
    return sorted(abs(int(d)) for d in facs if d != 0)


@given(matrices())
def test_snf_certificate(M):
    s = smith_normal_form(M)
    assert matmul(matmul(s.U, M), s.V) == s.D()
    assert matmul(s.V, s.V_inv) == identity(len(M[0]))
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1
    for a, b in zip(s.diagonal, s.diagonal[1:]):
        assert b % a == 0


@given(matrices())
def test_snf_against_sympy(M):
    ours = sorted(d for d in smith_normal_form(M).diagonal if d)
    assert ours == nonzero_invariants(M)


def test_snf_known():
    # diag(2, 6) -> 2, 6; [[2, 4], [6, 8]] -> 2, 4
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]


@given(matrices(4, 3))
def test_hnf_is_canonical(M):
    H = hermite_normal_form(M, 3)
    assert hermite_normal_form(H, 3) == H
    shuffled = list(reversed(M)) + [[a + b for a, b in zip(M[0], M[-1])]]
    assert hermite_normal_form(shuffled, 3) == H


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n)))
def test_inverse_unimodular(flat):
    n = math.isqrt(len(flat))
    M = [flat[i * n:(i + 1) * n] for i in range(n)]
    if abs(det(M)) != 1:
        with pytest.raises(ValueError):
            inverse_unimodular(M)
        return
    assert matmul(M, inverse_unimodular(M)) == identity(n)


@given(matrices(3, 3, -4, 4))
def test_charpoly_against_sympy(M):
    if len(M) != len(M[0]):
        return
    x = sympy.Symbol("x")
    expected = sympy.Matrix(M).charpoly(x).all_coeffs()
    assert list(charpoly(M).coeffs) == [int(c) for c in reversed(expected)]


def test_presentation_groups():
    assert group_from_presentation([[2, 0], [0, 3]]).invariant_factors == (6,)
    assert group_from_presentation([[2, 0]], 2) == FinAbelianGroup((2,), 1)
    # Z[x]/(x^2 + x + 1, 2) = F_4 additively
    assert ideal_quotient_group(IntPoly((1, 1, 1)), [IntPoly((2,))]).invariant_factors == (2, 2)


@given(matrices(3, 3, -6, 6), st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_quotient_coords_lift(M, v):
    if len(M[0]) != 3:
        return
    Q = QuotientGroup(M, 3)
    c = Q.coords(v)
    assert Q.coords(Q.lift(c)) == c
    diff = [a - b for a, b in zip(v, Q.lift(c))]
    assert Q.is_zero(diff)


MODULI = st.lists(st.integers(2, 6), min_size=1, max_size=3)


def brute_span(gens, moduli):
    seen = {tuple(0 for _ in moduli)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                s = tuple((x + y) % e for x, y, e in zip(a, g, moduli))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


@given(MODULI.flatmap(lambda mod: st.tuples(st.just(tuple(mod)), st.lists(
    st.tuples(*[st.integers(0, e - 1) for e in mod]), max_size=3), st.lists(
    st.tuples(*[st.integers(0, e - 1) for e in mod]), max_size=3))))
def test_subgroup_against_brute_force(data):
    moduli, g1, g2 = data
    A = Subgroup.generated_by(g1, moduli)
    B = Subgroup.generated_by(g2, moduli)
    sa, sb = brute_span(g1, moduli), brute_span(g2, moduli)
    assert A.order == len(sa)
    assert set(A.elements()) == sa
    assert A.intersection_order(B) == len(sa & sb)
    for v in itertools.product(*[range(e) for e in moduli]):
        assert A.contains(v) == (v in sa)
    assert A.group().order == len(sa)
    assert len(list(A.coset_representatives())) * A.order == math.prod(moduli)
