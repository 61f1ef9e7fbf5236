import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from curvebetti.polyring import (
    ONE,
    ZERO,
    DivisionByZero,
    IntPoly,
    NonExactDivision,
    RatExpr,
    arith,
    evaluate,
    exact_div,
    monomial,
    palindrome_check,
)

coeff_lists = st.lists(st.integers(-9, 9), max_size=8)
nonzero_lists = coeff_lists.filter(lambda cs: any(cs))


def P(*cs):
    return IntPoly(cs)


def test_canonical_representation():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([0, 0]).coeffs == ()
    assert IntPoly() == ZERO
    assert ZERO.degree == -1
    assert P(5).degree == 0


def test_basic_arithmetic():
    assert P(1, 1) * P(1, -1) == P(1, 0, -1)
    assert P(1, 2) + P(0, -2, 3) == P(1, 0, 3)
    assert P(1, 1) - P(1, 1) == ZERO
    assert arith(P(1, 1), P(1, -1), "mul") == P(1, 0, -1)
    assert arith(P(1), P(0, 1), "add") == P(1, 1)
    assert arith(P(1), P(0, 1), "sub") == P(1, -1)
    with pytest.raises(ValueError):
        arith(ONE, ONE, "div")


def test_scalar_and_power():
    assert 3 * P(1, 1) == P(3, 3)
    assert P(1, 1) ** 2 == P(1, 2, 1)
    assert P(2) ** 0 == ONE
    assert monomial(3) == P(0, 0, 0, 1)
    assert monomial(2, -4) == P(0, 0, -4)


def test_exact_div_geometric():
    # (1 - q^4) / (1 - q) = 1 + q + q^2 + q^3
    assert exact_div(ONE - monomial(4), ONE - monomial(1)) == P(1, 1, 1, 1)


def test_exact_div_gaussian_binomial():
    num = (ONE - monomial(3)) * (ONE - monomial(4))
    den = (ONE - monomial(1)) * (ONE - monomial(2))
    assert exact_div(num, den) == P(1, 1, 2, 1, 1)


def test_exact_div_rejects_remainder():
    # long division of 1 - q^3 by 1 + q leaves remainder 2
    with pytest.raises(NonExactDivision):
        exact_div(ONE - monomial(3), ONE + monomial(1))


def test_exact_div_rejects_non_integer_quotient():
    # q^2 - 1 = (2q - 2)(q + 1)/2 has no integer-coefficient quotient
    with pytest.raises(NonExactDivision):
        exact_div(P(-1, 0, 1), P(-2, 2))


def test_exact_div_edge_cases():
    assert exact_div(ZERO, P(1, 1)) == ZERO
    with pytest.raises(DivisionByZero):
        exact_div(P(1, 1), ZERO)
    with pytest.raises(NonExactDivision):
        exact_div(P(1), P(1, 1))
    assert P(1, 0, -1) / P(1, 1) == P(1, -1)


def test_evaluate():
    assert evaluate(P(1, 1, 2, 1, 1), 1) == 6
    assert evaluate(P(1, 1, 2, 1, 1), 2) == 35
    assert evaluate(ZERO, 7) == 0
    assert P(3, -1).evaluate(0) == 3


def test_palindrome_check():
    assert palindrome_check(P(1, 2, 1))
    assert not palindrome_check(P(1, 2, 3))
    assert palindrome_check(ZERO)
    assert palindrome_check(P(7))


def test_str_forms():
    assert str(P(1, 0, -1)) == "1 - q^2"
    assert str(P(0, 2)) == "2q"
    assert str(ZERO) == "0"


@given(coeff_lists, coeff_lists)
def test_addition_commutes(a, b):
    assert IntPoly(a) + IntPoly(b) == IntPoly(b) + IntPoly(a)


@given(coeff_lists, coeff_lists)
def test_multiplication_commutes(a, b):
    assert IntPoly(a) * IntPoly(b) == IntPoly(b) * IntPoly(a)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_distributivity(a, b, c):
    pa, pb, pc = IntPoly(a), IntPoly(b), IntPoly(c)
    assert pa * (pb + pc) == pa * pb + pa * pc


@given(coeff_lists, nonzero_lists)
def test_exact_div_undoes_multiplication(a, b):
    pa, pb = IntPoly(a), IntPoly(b)
    assert exact_div(pa * pb, pb) == pa


@given(nonzero_lists, nonzero_lists)
def test_exact_div_agrees_with_sympy(a, b):
    """Independent oracle: divide over the rationals with sympy and
    port the answer back.  exact_div must succeed exactly when the
    rational quotient exists and has integer coefficients."""
    q = sympy.Symbol("q")
    pa, pb = IntPoly(a), IntPoly(b)
    sa = sympy.Poly(list(reversed(pa.coeffs)), q, domain="QQ")
    sb = sympy.Poly(list(reversed(pb.coeffs)), q, domain="QQ")
    quo, rem = sympy.div(sa, sb, domain="QQ")
    divisible = rem.is_zero and all(
        sympy.Integer(c) == c for c in quo.all_coeffs()
    )
    if divisible:
        expected = IntPoly(int(c) for c in reversed(quo.all_coeffs()))
        assert exact_div(pa, pb) == expected
    else:
        with pytest.raises(NonExactDivision):
            exact_div(pa, pb)


@given(coeff_lists, st.integers(-5, 5))
def test_evaluate_is_ring_map(a, x):
    pa = IntPoly(a)
    assert (pa * pa).evaluate(x) == pa.evaluate(x) ** 2
    assert (pa + ONE).evaluate(x) == pa.evaluate(x) + 1


@given(coeff_lists)
def test_palindrome_iff_equal_to_reversal(a):
    p = IntPoly(a)
    assert p.is_palindromic() == (p == p.reversed())


def test_ratexpr_stays_unreduced_until_needed():
    e = RatExpr(ONE - monomial(2), ONE - monomial(1))
    f = e * RatExpr(ONE - monomial(3), ONE - monomial(2))
    # factors concatenate, nothing cancels early
    assert f.num == (ONE - monomial(2)) * (ONE - monomial(3))
    assert f.to_poly() == P(1, 1, 1)


def test_ratexpr_tolerates_non_polynomial_intermediates():
    # (1-q)/(1-q^2) alone is not a polynomial, but the product is.
    e = RatExpr(ONE - monomial(1), ONE - monomial(2))
    assert (e * RatExpr(ONE - monomial(2), ONE - monomial(1))).to_poly() == ONE
    with pytest.raises(NonExactDivision):
        e.to_poly()


def test_ratexpr_sum_and_difference():
    half1 = RatExpr(ONE, ONE - monomial(1))
    e = half1 + half1 - RatExpr(2 * ONE, ONE - monomial(1))
    assert e.to_poly() == ZERO
    s = RatExpr(ONE - monomial(3), ONE - monomial(1)) + 1
    assert s.to_poly() == P(2, 1, 1)


def test_ratexpr_zero_denominator():
    with pytest.raises(DivisionByZero):
        RatExpr(ONE, ZERO)
