from fractions import Fraction
from math import factorial

import mpmath
import pytest

from app.core.errors import NotConvertibleError, NotFoundError, OutOfDomainError
from app.models.symbolic import BivariateSeries, ExactPiMultiple, ZetaPolynomial
from app.models.words import Composition
from app.services.numerics.euler_sums import mzv_eval
from app.services.symbolic.zeta_symbols import (
    closed_forms,
    drin_coefficient,
    euler_reduction,
    evaluate_symbolic,
    markett_reduction,
    period1_exact,
    period1_newton,
    period1_reduce,
    to_pi_multiple,
    zeta_even_exact,
)
from tests.conftest import TEST_DIGITS, assert_close, oracle

z = ZetaPolynomial.zeta


# ZetaPolynomial


def test_polynomial_arithmetic_and_printing():
    p = z(5, 2) - ZetaPolynomial.zeta_product([2, 3])
    assert str(p) == "-z2 z3 + 2 * z5"
    assert p.is_homogeneous(5)
    assert (p - p).is_zero()
    assert z(2) * z(3) == z(3) * z(2)


def test_formal_symbols_instantiate():
    assert ZetaPolynomial.formal_zeta(2).instantiate(3) == z(6)
    assert (ZetaPolynomial.formal_zeta(1) ** 2).instantiate(2) == z(2) ** 2


def test_zeta_symbol_rejects_small_argument():
    with pytest.raises(OutOfDomainError):
        z(1)


def test_exact_pi_multiple():
    assert zeta_even_exact(1) == ExactPiMultiple(Fraction(1, 6), 2)
    assert zeta_even_exact(2) == ExactPiMultiple(Fraction(1, 90), 4)
    assert str(zeta_even_exact(1)) == "1/6 * pi^2"
    assert ExactPiMultiple(0, 4).is_zero


def test_bivariate_exp():
    series = BivariateSeries(3, {(1, 0): ZetaPolynomial.constant(1)})
    result = series.exp()
    assert result.coefficient(3, 0) == Fraction(1, 6)
    assert result.coefficient(0, 0) == 1


# Generating function for zeta(m+2, {1}^n)


def test_drin_low_coefficients():
    assert drin_coefficient(0, 0) == z(2)
    assert drin_coefficient(0, 1) == z(3)
    assert drin_coefficient(1, 0) == z(3)


def test_drin_coefficients_are_symmetric():
    for m in range(4):
        for n in range(4):
            assert drin_coefficient(m, n) == drin_coefficient(n, m)


def test_drin_weight_four():
    assert to_pi_multiple(drin_coefficient(0, 2)) == ExactPiMultiple(Fraction(1, 90), 4)
    assert to_pi_multiple(drin_coefficient(1, 1)) == ExactPiMultiple(Fraction(1, 360), 4)


def test_drin_matches_numerics():
    value = evaluate_symbolic(drin_coefficient(2, 1), digits=TEST_DIGITS)
    assert value.overlaps(mzv_eval(Composition((4, 1)), digits=TEST_DIGITS))


# Reductions


def test_euler_reduction():
    assert euler_reduction(2) == z(3)
    assert to_pi_multiple(euler_reduction(3)) == ExactPiMultiple(Fraction(1, 360), 4)
    with pytest.raises(OutOfDomainError):
        euler_reduction(1)


def test_markett_reduction():
    assert markett_reduction(3) == z(5, 2) - ZetaPolynomial.zeta_product([2, 3])
    value = evaluate_symbolic(markett_reduction(4), digits=TEST_DIGITS)
    assert value.overlaps(mzv_eval(Composition((4, 1, 1)), digits=TEST_DIGITS))


@pytest.mark.parametrize("k", range(7))
def test_period1_routes_agree(k):
    assert period1_reduce(k) == period1_newton(k)


@pytest.mark.parametrize("k", range(1, 6))
def test_period1_even_two(k):
    assert period1_exact(2, k) == ExactPiMultiple(Fraction(1, factorial(2 * k + 1)), 2 * k)


def test_period1_odd_is_not_a_pi_multiple():
    with pytest.raises(NotConvertibleError):
        period1_exact(3, 1)
    with pytest.raises(NotConvertibleError):
        to_pi_multiple(z(3))


def test_period1_odd_matches_numerics():
    # zeta(3, 3) = (zeta(3)^2 - zeta(6)) / 2
    value = evaluate_symbolic(period1_reduce(2).instantiate(3), digits=TEST_DIGITS)
    assert value.overlaps(mzv_eval(Composition((3, 3)), digits=TEST_DIGITS))


# Closed forms


def test_closed_forms_small_cases():
    assert closed_forms("z31", 1) == ExactPiMultiple(Fraction(1, 360), 4)
    assert closed_forms("z4block", 1) == zeta_even_exact(2)
    assert closed_forms("z2block", 2) == period1_exact(2, 2)
    assert closed_forms("z313", 0) == z(3)
    assert closed_forms("z213", 0) == z(2)


def test_closed_form_three_one_three():
    value = evaluate_symbolic(closed_forms("z313", 1), digits=TEST_DIGITS)
    assert value.overlaps(mzv_eval(Composition((3, 1, 3)), digits=TEST_DIGITS))


def test_closed_form_two_one_three():
    value = evaluate_symbolic(closed_forms("z213", 1), digits=TEST_DIGITS)
    assert value.overlaps(mzv_eval(Composition((2, 1, 3)), digits=TEST_DIGITS))


def test_closed_form_unknown_name():
    with pytest.raises(NotFoundError):
        closed_forms("z55", 1)


# Evaluation


def test_evaluate_symbolic_values():
    assert_close(evaluate_symbolic(z(2), digits=TEST_DIGITS), oracle(lambda: mpmath.pi ** 2 / 6))
    assert_close(evaluate_symbolic(zeta_even_exact(2), digits=TEST_DIGITS), oracle(lambda: mpmath.pi ** 4 / 90))
    assert evaluate_symbolic(ZetaPolynomial.constant(3)).contains(3)


def test_evaluate_rejects_formal_symbols():
    with pytest.raises(OutOfDomainError):
        evaluate_symbolic(period1_reduce(2))
