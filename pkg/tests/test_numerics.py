from fractions import Fraction

import mpmath
import pytest
import sympy

from app.core.errors import DivergentError, EnclosureError, OutOfDomainError, PoleError, UnsupportedError
from app.models.arguments import SignedComposition
from app.models.ball import Ball, ComplexBall, format_upper, to_fraction
from app.models.words import Composition, Word
from app.services.numerics.euler_sums import (
    as_signed_composition,
    euler_sum_eval,
    euler_sum_value,
    g_at_half,
    multiple_polylog_eval,
    mzv_eval,
)
from app.services.numerics.nested_sums import chain_count_tail, perturbation_bound
from app.services.numerics.precision import working_bits
from app.services.numerics.q_integrals import (
    DEFAULT_FORMS,
    classical_value,
    q_word_value_exact,
    q_word_value_series,
)
from app.services.numerics.quadrature import new_integral_eval
from app.services.numerics.riemann import convergence_region, zeta_riemann
from app.services.numerics.special import (
    a_of_z,
    a_of_z_product,
    alternating_ones,
    digamma_near_one,
    g_kernel,
    g_kernel_series,
    gauss_2f1,
    period1_product,
    sinc_zeta_product,
    y1,
    y2,
)
from tests.conftest import TEST_DIGITS, assert_close, oracle


def signed(*parts, x=Fraction(1)):
    return SignedComposition.from_signed_parts(tuple(parts), x)


# Balls


def test_ball_arithmetic_contains_exact_result():
    third = Ball.exact(Fraction(1, 3), 100)
    assert third.contains(Fraction(1, 3))
    total = third + third + third
    assert total.contains(1)
    assert (third * 3).contains(1)
    assert (Ball.one(100) / third).contains(3)


def test_ball_division_by_zero_ball():
    with pytest.raises(EnclosureError):
        Ball.one() / Ball(mpmath.mpf(0), mpmath.mpf("0.1"))


def test_negative_values_keep_their_sign():
    half = Fraction(1, 2)
    negative = Ball.exact(-half)
    assert to_fraction(negative.mid) == -half
    assert to_fraction(mpmath.mpf(-3)) == -3
    assert to_fraction(mpmath.mpf("-0.375")) == Fraction(-3, 8)
    assert negative.contains(-half)
    assert not negative.contains(half)
    assert not negative.overlaps(Ball.exact(half))
    assert negative.residual(Ball.exact(half)) >= 1


def test_negation_keeps_working_precision():
    bits = 150
    third = Ball.exact(Fraction(1, 3), bits)
    negative = -third
    assert negative.prec == bits
    assert negative.rad == third.rad
    assert negative.contains(Fraction(-1, 3))
    assert (-negative).contains(Fraction(1, 3))


def test_subtraction_keeps_working_precision():
    bits = 150
    difference = Ball.one(bits) - Ball.exact(Fraction(1, 3), bits)
    assert difference.contains(Fraction(2, 3))
    assert difference.rad < mpmath.ldexp(1, -140)
    with mpmath.workprec(300):
        assert mpmath.almosteq(difference.mid, mpmath.mpf(2) / 3, rel_eps=mpmath.ldexp(1, -140))


@pytest.mark.parametrize("q", [Fraction(-5, 7), Fraction(-1, 3), Fraction(2, 9), Fraction(-7, 10)])
def test_enclosures_of_signed_values_match_high_precision(q):
    bits = 150
    ball = Ball.exact(q, bits)
    seventh = Ball.exact(Fraction(1, 7), bits)
    cases = [
        (-ball, -q),
        (ball - seventh, q - Fraction(1, 7)),
        (seventh - ball, Fraction(1, 7) - q),
        (ball * ball, q * q),
        (ball / seventh, q * 7),
        (-(ball * seventh), -q / 7),
    ]
    for result, exact in cases:
        assert result.prec == bits
        assert result.contains(exact), f"{result} misses {exact}"
        with mpmath.workprec(400):
            reference = mpmath.mpf(exact.numerator) / exact.denominator
            assert mpmath.almosteq(result.mid, reference, rel_eps=mpmath.ldexp(1, -140))


def test_ball_bounds_and_log():
    two = Ball.exact(2, 100)
    assert two.lower() <= 2 <= two.upper()
    assert Ball.exact(Fraction(-1, 3), 100).upper() < 0
    assert_close(two.log(), oracle(lambda: mpmath.log(2)))
    with pytest.raises(EnclosureError):
        Ball.exact(Fraction(-1, 2)).log()


def test_tail_bounds_accept_rational_ratios():
    # sum_{m > 40} (m - 1) 2^-m = 41 / 2^40
    tail = chain_count_tail(Fraction(1, 2), 2, 40)
    assert Fraction(41, 2 ** 40) <= to_fraction(tail) < Fraction(42, 2 ** 40)
    assert chain_count_tail(Fraction(0), 2, 40) == 0
    assert perturbation_bound(Fraction(1, 2), 1, [mpmath.ldexp(1, -60)]) >= mpmath.ldexp(1, -60)
    assert perturbation_bound(Fraction(1, 2), 2, [0, 0]) == 0


def test_ball_json_keeps_enclosure():
    ball = zeta_riemann(3, digits=TEST_DIGITS)
    restored = Ball.from_json(ball.to_json())
    assert restored.contains(oracle(lambda: mpmath.zeta(3)))


def test_format_upper_rounds_up():
    assert format_upper(mpmath.mpf("0.000123")) == "1.3e-4"
    assert format_upper(mpmath.mpf(0)) == "0"


# Riemann zeta


@pytest.mark.parametrize("s", [2, 3, 4, 5, 7, 10])
def test_zeta_riemann(s, digits):
    value = zeta_riemann(s, digits=digits)
    assert_close(value, oracle(lambda: mpmath.zeta(s)))
    assert value.rad < mpmath.mpf(10) ** (-digits)


def test_zeta_riemann_diverges_at_one():
    with pytest.raises(DivergentError):
        zeta_riemann(1)


def test_convergence_region():
    assert convergence_region([2, 1])
    assert not convergence_region([1, 2])
    assert not convergence_region([2, 0, 1])


# Euler sums and MZVs


def test_zeta_two_one_equals_zeta_three(digits):
    assert_close(mzv_eval(Composition((2, 1)), digits=digits), oracle(lambda: mpmath.zeta(3)))


def test_zeta_three_one(digits):
    assert_close(mzv_eval(Composition((3, 1)), digits=digits), oracle(lambda: mpmath.pi ** 4 / 360))


def test_holder_pieces_at_one_half(digits):
    bits = working_bits(digits)
    assert_close(g_at_half((1,), bits), oracle(lambda: -mpmath.log(2)))
    assert_close(g_at_half((-1,), bits), oracle(lambda: mpmath.log(1.5)))


def test_mzv_diverges_with_leading_one():
    with pytest.raises(DivergentError):
        mzv_eval(Composition((1, 2)))


def test_empty_argument_is_one():
    assert euler_sum_value(SignedComposition((), ())).contains(1)


def test_alternating_harmonic_sum(digits):
    assert_close(euler_sum_value(signed(-1), digits=digits), oracle(lambda: -mpmath.log(2)))


def test_bar_one_then_one(digits):
    # sum H_{n-1} x^n / n = log(1 - x)^2 / 2 at x = -1
    expected = oracle(lambda: mpmath.log(2) ** 2 / 2)
    assert_close(euler_sum_value(signed(-1, 1), digits=digits), expected)


def test_partial_point_sum(digits):
    assert_close(euler_sum_value(signed(1, x=Fraction(1, 2)), digits=digits), oracle(lambda: mpmath.log(2)))
    assert_close(euler_sum_value(signed(2, x=Fraction(1, 2)), digits=digits), oracle(lambda: mpmath.polylog(2, 0.5)))


def test_direct_sum_agrees_with_split(digits):
    direct = euler_sum_eval(signed(2, 1), digits=digits)
    split = euler_sum_value(signed(2, 1), digits=digits)
    assert direct.overlaps(split)
    assert split.rad < direct.rad


def test_x_zero_gives_zero():
    assert euler_sum_value(signed(3, x=Fraction(0))).contains(0)


def test_divergent_argument():
    with pytest.raises(DivergentError):
        euler_sum_value(signed(1, 1))


def test_alternating_stuffle_relation(digits):
    # zeta(2) zeta(1bar) = zeta(2, 1bar) + zeta(1bar, 2) + zeta(3bar)
    product = euler_sum_value(signed(2), digits=digits) * euler_sum_value(signed(-1), digits=digits)
    total = (
        euler_sum_value(signed(2, -1), digits=digits)
        + euler_sum_value(signed(-1, 2), digits=digits)
        + euler_sum_value(signed(-3), digits=digits)
    )
    assert product.overlaps(total)
    assert_close(euler_sum_value(signed(-3), digits=digits), oracle(lambda: -3 * mpmath.zeta(3) / 4))


# Multiple polylogarithms


def test_polylog_reduces_to_euler_sum():
    z = [ComplexBall.exact(Fraction(1, 2)), ComplexBall.exact(1)]
    arg = as_signed_composition((1, 1), z)
    assert arg == SignedComposition((1, 1), (1, 1), Fraction(1, 2))
    assert as_signed_composition((1, 1), [ComplexBall.exact(1), ComplexBall.exact(1)]) is None


def test_dilogarithm_at_one_half(digits):
    value = multiple_polylog_eval([2], [ComplexBall.exact(Fraction(1, 2), prec=working_bits(digits))], digits=digits)
    expected = oracle(lambda: mpmath.pi ** 2 / 12 - mpmath.log(2) ** 2 / 2)
    assert_close(value, expected)


def test_polylog_with_complex_argument(digits):
    bits = working_bits(digits)
    z = ComplexBall.exact(Fraction(1, 3), Fraction(1, 4), prec=bits)
    value = multiple_polylog_eval([3], [z], digits=digits)
    assert_close(value, oracle(lambda: mpmath.polylog(3, mpmath.mpc(1, 0.75) / 3)))


def test_polylog_outside_disk():
    z = [ComplexBall.exact(Fraction(3, 4), Fraction(3, 4))]
    with pytest.raises(OutOfDomainError):
        multiple_polylog_eval([2], z)


def test_polylog_index_mismatch():
    with pytest.raises(OutOfDomainError):
        multiple_polylog_eval([2, 1], [ComplexBall.exact(Fraction(1, 2))])


# Special functions


def test_gauss_2f1(digits):
    x = Ball.exact(Fraction(1, 3), working_bits(digits))
    value = gauss_2f1(Fraction(1, 2), Fraction(1, 3), Fraction(5, 4), x, digits=digits)
    assert_close(value, oracle(lambda: mpmath.hyp2f1(0.5, mpmath.mpf(1) / 3, 1.25, mpmath.mpf(1) / 3)))


def test_gauss_2f1_pole():
    with pytest.raises(PoleError):
        gauss_2f1(1, 1, -2, Ball.exact(Fraction(1, 2)))


def test_gauss_2f1_poles_at_nonpositive_integers():
    x = Ball.exact(Fraction(1, 2))
    for c in (0, -1, Fraction(-3), Ball.exact(-4), ComplexBall.exact(-5)):
        with pytest.raises(PoleError):
            gauss_2f1(1, 1, c, x)


def test_gauss_2f1_between_poles(digits):
    x = Ball.exact(Fraction(1, 2), working_bits(digits))
    value = gauss_2f1(1, 1, Fraction(-5, 2), x, digits=digits)
    assert_close(value, oracle(lambda: mpmath.hyp2f1(1, 1, -2.5, 0.5)))


def test_y1_at_one_is_sinc(digits):
    value = y1(Ball.one(working_bits(digits)), Fraction(1, 3), digits=digits)
    assert_close(value, oracle(lambda: mpmath.sin(mpmath.pi / 3) / (mpmath.pi / 3)))
    assert y2(Ball.one(), Fraction(1, 3)).contains(0)


def test_y2_below_one(digits):
    x = Ball.exact(Fraction(1, 2), working_bits(digits))
    value = y2(x, Fraction(1, 4), digits=digits)
    assert_close(value, oracle(lambda: 0.5 * mpmath.hyp2f1(1.25, 0.75, 2, 0.5)))


def test_y2_at_an_inexact_point(digits):
    x = Ball.exact(Fraction(3, 10), working_bits(digits))
    value = y2(x, Fraction(1, 4), digits=digits)
    expected = oracle(lambda: (1 - mpmath.mpf(3) / 10) * mpmath.hyp2f1(1.25, 0.75, 2, 1 - mpmath.mpf(3) / 10))
    assert_close(value, expected)


def test_digamma_near_one(digits):
    value = digamma_near_one(ComplexBall.exact(0, Fraction(3, 10)), digits=digits)
    assert_close(value, oracle(lambda: mpmath.digamma(mpmath.mpc(1, 0.3))))


def test_digamma_at_one_is_minus_gamma(digits):
    assert_close(digamma_near_one(0, digits=digits), oracle(lambda: -mpmath.euler))


def test_g_kernel_routes_agree(digits):
    z = Fraction(3, 10)

    def expected():
        w = mpmath.mpf(3) / 10
        iw = mpmath.mpc(0, w)
        return (mpmath.digamma(1 + iw) + mpmath.digamma(1 - iw) - mpmath.digamma(1 + w) - mpmath.digamma(1 - w)) / 4

    assert_close(g_kernel(z, digits=digits), expected())
    assert_close(g_kernel_series(z, digits=digits), expected())


def test_g_kernel_outside_disk():
    with pytest.raises(OutOfDomainError):
        g_kernel(Fraction(3, 2))


def test_a_of_z_routes_agree(digits):
    def expected():
        z = mpmath.mpf(1) / 2
        return mpmath.gamma(0.5) / (mpmath.gamma(1 + z / 2) * mpmath.gamma(0.5 - z / 2))

    assert_close(a_of_z(Fraction(1, 2), digits=digits), expected())
    assert_close(a_of_z_product(Fraction(1, 2), digits=digits), expected(), tol=1e-15)


def test_alternating_ones(digits):
    values = alternating_ones(3, digits=digits)
    assert values[0].contains(1)
    assert_close(values[1], oracle(lambda: -mpmath.log(2)))
    assert_close(values[2], oracle(lambda: mpmath.log(2) ** 2 / 2 - mpmath.pi ** 2 / 12))


def test_sinc_product_at_depth_one(digits):
    t = Ball.exact(Fraction(1, 3), working_bits(digits))
    lhs, rhs = sinc_zeta_product(t, 1, digits=digits)
    expected = oracle(lambda: mpmath.sin(mpmath.pi / 3) / (mpmath.pi / 3))
    assert_close(lhs, expected)
    assert_close(rhs, expected)


def test_sinc_product_sides_agree(digits):
    t = Ball.exact(Fraction(1, 2), working_bits(digits))
    lhs, rhs = sinc_zeta_product(t, 3, digits=digits)
    assert lhs.overlaps(rhs)


def test_period1_product(digits):
    t = Ball.exact(Fraction(1, 2), working_bits(digits))
    expected = oracle(lambda: mpmath.sinh(mpmath.pi / 2) / (mpmath.pi / 2))
    assert_close(period1_product(t, 2, digits=digits), expected)
    odd = period1_product(t, 3, digits=digits)
    assert_close(odd, oracle(lambda: mpmath.nprod(lambda j: 1 + mpmath.mpf(1) / (8 * j ** 3), [1, mpmath.inf]), dps=30),
                 tol=1e-15)


# Quadrature


def test_new_integral_depth_one():
    value = new_integral_eval(Composition((2,)), [Fraction(1, 2)])
    assert not value.rigorous
    assert abs(float(value.mid) - float(mpmath.polylog(2, 0.5))) < 1e-10


def test_new_integral_depth_two():
    value = new_integral_eval(Composition((1, 1)), [Fraction(1, 2), Fraction(1, 2)])
    reference = multiple_polylog_eval([1, 1], [ComplexBall.exact(Fraction(1, 2)), ComplexBall.exact(Fraction(1, 2))])
    assert abs(float(value.mid) - float(reference.re.mid)) < 1e-8


def test_new_integral_limits():
    with pytest.raises(UnsupportedError):
        new_integral_eval(Composition((1, 1, 1)), [Fraction(1, 2)] * 3)
    with pytest.raises(OutOfDomainError):
        new_integral_eval(Composition((2,)), [Fraction(1)])


# Jackson integrals


def test_q_values_exact():
    q = Fraction(1, 2)
    assert q_word_value_exact(Word.of("ab"), DEFAULT_FORMS, Fraction(1), q) == sympy.Rational(8, 21)
    assert q_word_value_exact(Word.of("ba"), DEFAULT_FORMS, Fraction(1), q) == sympy.Rational(4, 7)
    assert q_word_value_exact(Word(), DEFAULT_FORMS, Fraction(1), q) == 1


def test_q_value_series_matches_exact(digits):
    value = q_word_value_series(Word.of("ab"), DEFAULT_FORMS, Fraction(1), Fraction(1, 2), digits=digits)
    assert value.contains(Fraction(8, 21))


def test_classical_limit():
    assert classical_value(Word.of("ab"), DEFAULT_FORMS, Fraction(1)) == sympy.Rational(1, 6)


def test_q_value_domain():
    with pytest.raises(OutOfDomainError):
        q_word_value_exact(Word.of("a"), DEFAULT_FORMS, Fraction(1), Fraction(1))
    with pytest.raises(OutOfDomainError):
        q_word_value_exact(Word.of("c"), DEFAULT_FORMS, Fraction(1), Fraction(1, 2))


def test_ball_radius_is_exact_fraction():
    ball = zeta_riemann(2, digits=TEST_DIGITS)
    assert to_fraction(ball.rad) >= 0
