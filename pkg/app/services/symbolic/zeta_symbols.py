# app/services/symbolic/zeta_symbols.py
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Union

from app.core.errors import NotConvertibleError, NotFoundError, OutOfDomainError
from app.models.ball import Ball
from app.models.symbolic import BivariateSeries, ExactPiMultiple, ZetaPolynomial
from app.services.combinatorics.combinatorics import partitions_calpha, zeta_even_rational
from app.services.numerics.precision import pi_ball, with_precision_retry, working_bits
from app.services.numerics.riemann import zeta_at_bits

logger = logging.getLogger(__name__)

CLOSED_FORMS = ("z31", "z4block", "z313", "z213", "z2block")

SymbolicValue = Union[ZetaPolynomial, ExactPiMultiple]


def zeta_even_exact(n: int) -> ExactPiMultiple:
    """zeta(2n) = rational * pi^(2n)."""
    return ExactPiMultiple(zeta_even_rational(n), 2 * n)


# Bivariate generating function for zeta(m+2, {1}^n)


@lru_cache(maxsize=16)
def drin_series(order: int) -> BivariateSeries:
    """1 - exp(sum_k zeta(k)/k (x^k + y^k - (x+y)^k)) through total degree `order`."""
    exponent = {}
    for k in range(2, order + 1):
        for i in range(1, k):
            exponent[(i, k - i)] = ZetaPolynomial.zeta(k, Fraction(-comb(k, i), k))
    one = BivariateSeries(order, {(0, 0): ZetaPolynomial.constant(1)})
    return one - BivariateSeries(order, exponent).exp()


def drin_coefficient(m: int, n: int) -> ZetaPolynomial:
    """Coefficient of x^(m+1) y^(n+1); equals zeta(m+2, {1}^n)."""
    if m < 0 or n < 0:
        raise OutOfDomainError("indices must be nonnegative", context={"m": m, "n": n})
    return drin_series(m + n + 2).coefficient(m + 1, n + 1)


# Reductions


def euler_reduction(m: int) -> ZetaPolynomial:
    """2 zeta(m, 1) = m zeta(m+1) - sum_{j=1}^{m-2} zeta(m-j) zeta(j+1)."""
    if m < 2:
        raise OutOfDomainError("Euler's reduction needs m >= 2", context={"m": m})
    total = ZetaPolynomial.zeta(m + 1, m)
    for j in range(1, m - 1):
        total = total - ZetaPolynomial.zeta_product([m - j, j + 1])
    return total.scale(Fraction(1, 2))


def markett_reduction(s: int) -> ZetaPolynomial:
    """zeta(s, 1, 1) in products of Riemann zeta values."""
    if s < 3:
        raise OutOfDomainError("the reduction of zeta(s,1,1) needs s >= 3", context={"s": s})
    total = ZetaPolynomial.zeta(s + 2, Fraction(s * (s + 1), 6))
    total = total - ZetaPolynomial.zeta_product([2, s], Fraction(s - 1, 2))
    for n in range(0, s - 3):
        total = total - ZetaPolynomial.zeta_product([s - n - 1, n + 3], Fraction(s, 4))
        for m in range(0, n + 1):
            total = total + ZetaPolynomial.zeta_product([s - n - 2, n - m + 2, m + 2], Fraction(1, 6))
    return total


@lru_cache(maxsize=64)
def period1_reduce(k: int) -> ZetaPolynomial:
    """zeta({s}^k) = (-1)^k sum_{|alpha|=k} prod zeta(alpha_j s) / c_alpha, s formal."""
    if k < 0:
        raise OutOfDomainError("k must be nonnegative", context={"k": k})
    total = ZetaPolynomial()
    for alpha in partitions_calpha(k):
        term = ZetaPolynomial.constant(Fraction((-1) ** k, alpha.c_alpha))
        for part in alpha.parts:
            term = term * ZetaPolynomial.formal_zeta(part)
        total = total + term
    return total


@lru_cache(maxsize=64)
def period1_newton(k: int) -> ZetaPolynomial:
    """k e_k = sum_{j=1}^k (-1)^(j+1) zeta(js) e_{k-j}."""
    if k < 0:
        raise OutOfDomainError("k must be nonnegative", context={"k": k})
    if k == 0:
        return ZetaPolynomial.constant(1)
    total = ZetaPolynomial()
    for j in range(1, k + 1):
        term = ZetaPolynomial.formal_zeta(j) * period1_newton(k - j)
        total = total + term if j % 2 else total - term
    return total.scale(Fraction(1, k))


def to_pi_multiple(p: ZetaPolynomial) -> ExactPiMultiple:
    """Substitute zeta(2n) = rational * pi^(2n); every monomial must land on one power of pi."""
    result = ExactPiMultiple(Fraction(0))
    for monomial, coeff in p:
        value = ExactPiMultiple(coeff)
        for symbol, exponent in monomial:
            if symbol.formal or symbol.arg % 2:
                raise NotConvertibleError(
                    f"{symbol} is not an even zeta value",
                    context={"polynomial": str(p)},
                )
            value = value * zeta_even_exact(symbol.arg // 2) ** exponent
        try:
            result = result + value
        except OutOfDomainError as e:
            raise NotConvertibleError("monomials carry different powers of pi", cause=e, context={"polynomial": str(p)})
    return result


@lru_cache(maxsize=256)
def period1_exact(s: int, k: int) -> ExactPiMultiple:
    """zeta({s}^k) for even s."""
    if s % 2:
        raise NotConvertibleError("only even s gives a rational multiple of a pi power", context={"s": s})
    return to_pi_multiple(period1_reduce(k).instantiate(s))


# Closed forms


def zeta_four_block(j: int) -> ZetaPolynomial:
    """zeta({4}^j) = 4^j * 2 pi^(4j) / (4j+2)!, written as a rational multiple of zeta(4)^j."""
    coefficient = Fraction(4 ** j * 2 * 90 ** j, factorial(4 * j + 2))
    return ZetaPolynomial.zeta(4) ** j * coefficient if j else ZetaPolynomial.constant(1)


def _z313(n: int) -> ZetaPolynomial:
    total = ZetaPolynomial()
    for k in range(n + 1):
        total = total + ZetaPolynomial.zeta(4 * k + 3) * zeta_four_block(n - k)
    return total.scale(Fraction(1, 4 ** n))


def _z213(n: int) -> ZetaPolynomial:
    total = ZetaPolynomial()
    for k in range(n + 1):
        bracket = ZetaPolynomial.zeta(4 * k + 2, 4 * k + 1)
        for j in range(1, k + 1):
            bracket = bracket - ZetaPolynomial.zeta_product([4 * j - 1, 4 * k - 4 * j + 3], 4)
        term = zeta_four_block(n - k) * bracket
        total = total + term if k % 2 == 0 else total - term
    return total.scale(Fraction(1, 4 ** n))


def closed_forms(name: str, n: int) -> SymbolicValue:
    if n < 0:
        raise OutOfDomainError("n must be nonnegative", context={"n": n})
    if name == "z31":
        return ExactPiMultiple(Fraction(2, factorial(4 * n + 2)), 4 * n)
    if name == "z4block":
        return ExactPiMultiple(Fraction(4 ** n * 2, factorial(4 * n + 2)), 4 * n)
    if name == "z2block":
        return ExactPiMultiple(Fraction(1, factorial(2 * n + 1)), 2 * n)
    if name == "z313":
        return _z313(n)
    if name == "z213":
        return _z213(n)
    raise NotFoundError(f"unknown closed form {name!r}", context={"choices": list(CLOSED_FORMS)})


# Numeric substitution


def evaluate_at_bits(p: SymbolicValue, bits: int) -> Ball:
    if isinstance(p, ExactPiMultiple):
        if p.is_zero:
            return Ball.zero(bits)
        return pi_ball(bits) ** p.power * p.coefficient
    total = Ball.zero(bits)
    for monomial, coeff in p:
        term = Ball.exact(coeff, bits)
        for symbol, exponent in monomial:
            if symbol.formal:
                raise OutOfDomainError(
                    f"formal symbol {symbol} must be instantiated before evaluation",
                    context={"polynomial": str(p)},
                )
            term = term * zeta_at_bits(symbol.arg, bits) ** exponent
        total = total + term
    return total


@with_precision_retry
def evaluate_symbolic(p: SymbolicValue, digits: int = None) -> Ball:
    return evaluate_at_bits(p, working_bits(digits))
