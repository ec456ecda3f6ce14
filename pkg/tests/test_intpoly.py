import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, strategies as st

from cyclomod.errors import DivisionByZero, ModulusMismatch, NonMonicDivisor, NotPrime
from cyclomod.intpoly import (
    IntPoly,
    ModPoly,
    bareiss_det,
    discriminant,
    divmod_exact,
    format_poly,
    gcd_mod_p,
    parse_poly,
    poly_from_json,
    poly_to_json,
    reduce_mod_p,
    resultant,
    sylvester_resultant,
)

X = sympy.Symbol("x")
coeffs = st.lists(st.integers(-20, 20), min_size=0, max_size=7)
nonzero = coeffs.filter(lambda c: any(c))


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], X)


@given(coeffs, coeffs, coeffs)
def test_ring_axioms(a, b, c):
    A, B, C = IntPoly(a), IntPoly(b), IntPoly(c)
    assert A * (B + C) == A * B + A * C
    assert (A * B) * C == A * (B * C)
    assert A - A == IntPoly(())


@given(coeffs, coeffs)
def test_multiplication_matches_sympy(a, b):
    A, B = IntPoly(a), IntPoly(b)
    assert to_sympy(A * B) == to_sympy(A) * to_sympy(B)


@given(coeffs, st.lists(st.integers(-9, 9), min_size=0, max_size=5))
def test_division_by_monic(a, b):
    B = IntPoly(list(b) + [1])
    q, r = divmod_exact(IntPoly(a), B)
    assert q * B + r == IntPoly(a)
    assert r.degree < B.degree


def test_division_errors():
    with pytest.raises(DivisionByZero):
        divmod_exact(IntPoly((1, 1)), IntPoly(()))
    with pytest.raises(NonMonicDivisor):
        divmod_exact(IntPoly((1, 0, 1)), IntPoly((1, 2)))


@given(nonzero, nonzero)
def test_resultant_against_sympy_and_sylvester(a, b):
    A, B = IntPoly(a), IntPoly(b)
    if A.degree < 1 or B.degree < 1:
        return
    # sympy.resultant drops the sign on some inputs, so its Sylvester determinant is the oracle
    expected = int(sylvester(to_sympy(A).as_expr(), to_sympy(B).as_expr(), X).det())
    assert resultant(A, B) == expected
    assert sylvester_resultant(A, B) == expected


@given(nonzero)
def test_discriminant_against_sympy(a):
    A = IntPoly(a)
    if A.degree < 2:
        return
    assert discriminant(A) == int(sympy.discriminant(to_sympy(A)))


def test_resultant_sign_on_monomial():
    # lc(a)^deg(b) * b(-2) = -8
    assert resultant(IntPoly((2, 1)), IntPoly((0, 0, 0, 1))) == -8


def test_discriminant_of_quadratic():
    # b^2 - 4ac for x^2 + x + 1
    assert discriminant(IntPoly((1, 1, 1))) == -3


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_against_sympy(m):
    assert bareiss_det(m) == sympy.Matrix(m).det()


@given(nonzero)
def test_text_and_json_round_trip(a):
    A = IntPoly(a)
    assert parse_poly(format_poly(A.coeffs)) == A
    assert poly_from_json(poly_to_json(A)) == A
    assert poly_from_json(poly_to_json(A)["text"]) == A


def test_format_examples():
    assert format_poly((1, 0, -1, 0, 1)) == "x^4 - x^2 + 1"
    assert format_poly((-1, 1)) == "x - 1"
    assert format_poly(()) == "0"


PRIMES = st.sampled_from([2, 3, 5, 7])


@given(PRIMES, nonzero, nonzero)
def test_gcd_mod_p_against_sympy(p, a, b):
    A, B = reduce_mod_p(IntPoly(a), p), reduce_mod_p(IntPoly(b), p)
    if A.is_zero() or B.is_zero():
        return
    g = gcd_mod_p(A, B)
    expected = sympy.Poly(list(reversed(a)), X, modulus=p).gcd(sympy.Poly(list(reversed(b)), X, modulus=p))
    exp_coeffs = [int(c) % p for c in reversed(expected.all_coeffs())]
    assert g == ModPoly(p, exp_coeffs).monic()


@given(PRIMES, st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_irreducibility_against_sympy(p, body):
    f = ModPoly(p, list(body) + [1])
    if f.degree < 1:
        return
    sp = sympy.Poly(list(reversed(f.coeffs)), X, modulus=p)
    assert f.is_irreducible() == sp.is_irreducible


def test_mod_p_errors():
    with pytest.raises(NotPrime):
        reduce_mod_p(IntPoly((1, 1)), 4)
    with pytest.raises(ModulusMismatch):
        gcd_mod_p(ModPoly(2, (1, 1)), ModPoly(3, (1, 1)))
