# app/services/numerics/special.py
"""Hypergeometric, digamma and Gamma-ratio kernels as power series with tail bounds."""
import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
from mpmath import mpf

from app.core.errors import OutOfDomainError, PoleError
from app.models.ball import Ball, ComplexBall, RAD_PREC, rad_add, rad_mul, to_fraction
from app.services.numerics.precision import (
    euler_gamma_ball,
    log2_ball,
    pi_ball,
    with_precision_retry,
    working_bits,
)
from app.services.numerics.riemann import zeta_at_bits

logger = logging.getLogger(__name__)

_SLACK = 1 + mpmath.ldexp(1, -40)


def _as_complex(value, bits: int) -> ComplexBall:
    if isinstance(value, ComplexBall):
        return value
    if isinstance(value, Ball):
        return ComplexBall.from_ball(value)
    return ComplexBall.exact(value, 0, bits)


def _exact(*values) -> bool:
    for v in values:
        if isinstance(v, ComplexBall) and (v.re.rad or v.im.rad):
            return False
        if isinstance(v, Ball) and v.rad:
            return False
    return True


def unit_root(fraction_of_pi: Fraction, bits: int) -> ComplexBall:
    """exp(i pi q) for rational q."""
    with mpmath.workprec(bits + 10):
        angle = mpmath.pi * mpf(fraction_of_pi.numerator) / fraction_of_pi.denominator
        c, s = mpmath.cos(angle), mpmath.sin(angle)
    with mpmath.workprec(bits):
        c, s = +c, +s
    err = mpmath.ldexp(1, 2 - bits)
    return ComplexBall(Ball(c, err, bits), Ball(s, err, bits))


def _abs_bound(value: ComplexBall) -> mpf:
    return value.abs_upper()


# sinc


def sinc_ball(w: ComplexBall, bits: int) -> ComplexBall:
    """sin(w)/w, entire power series sum (-1)^k w^2k / (2k+1)!."""
    r = _abs_bound(w)
    target = mpmath.ldexp(1, -bits)
    with mpmath.workprec(bits):
        w2 = w.mid * w.mid
        term = mpmath.mpc(1)
        total = mpmath.mpc(0)
        k = 0
        while True:
            total += term
            k += 1
            term = -term * w2 / ((2 * k) * (2 * k + 1))
            ratio = r * r / ((2 * k + 2) * (2 * k + 3))
            if ratio <= 0.5 and abs(term) * 2 <= target:
                break
    with mpmath.workprec(RAD_PREC):
        growth = mpmath.exp(r)
        move = w.rad_upper()
    tail = rad_mul(mpmath.fabs(term), 2 * _SLACK)
    rounding = rad_mul(mpmath.ldexp(8 * k + 8, -bits), growth)
    perturbation = rad_mul(move, rad_mul(growth, mpmath.exp(move)))
    return ComplexBall.from_mpc(total, rad_add(tail, rounding, perturbation), bits, w.rigorous)


def sinc_pi_ball(z: ComplexBall, bits: int) -> ComplexBall:
    return sinc_ball(z * pi_ball(bits), bits)


# Gauss hypergeometric function


def _check_parameter_c(c) -> None:
    """Poles of the series: c in {0, -1, -2, ...}."""
    if isinstance(c, (int, Fraction)):
        exact = Fraction(c)
    elif isinstance(c, ComplexBall) and not (c.im.mid or c.im.rad or c.re.rad):
        exact = to_fraction(c.re.mid)
    else:
        if isinstance(c, ComplexBall) and c.im.contains_zero():
            with mpmath.workprec(RAD_PREC):
                n = int(mpmath.nint(c.re.mid))
            if n <= 0 and c.re.contains(n):
                raise PoleError("c may be a nonpositive integer", context={"c": str(c)})
        return
    if exact.denominator == 1 and exact <= 0:
        raise PoleError("c is a nonpositive integer", context={"c": str(exact)})


def hyp2f1_ball(a: ComplexBall, b: ComplexBall, c: ComplexBall, x: Ball, bits: int, max_terms: int = 200000) -> ComplexBall:
    _check_parameter_c(c)
    xr = x.abs_upper()
    if xr >= 1:
        raise OutOfDomainError("the hypergeometric series needs |x| < 1", context={"x": str(x)})
    target = mpmath.ldexp(1, -bits)
    with mpmath.workprec(RAD_PREC):
        a1 = mpmath.fabs(a.mid - 1)
        bc = mpmath.fabs(b.mid - c.mid)
        cabs = mpmath.fabs(c.mid)
    with mpmath.workprec(bits):
        am, bm, cm, xm = a.mid, b.mid, c.mid, x.mid
        term = mpmath.mpc(1)
        total = mpmath.mpc(0)
        abs_sum = mpf(0)
        n = 0
        while True:
            total += term
            abs_sum += abs(term)
            term = term * (am + n) * (bm + n) / ((cm + n) * (n + 1)) * xm
            n += 1
            if n > cabs + 1:
                with mpmath.workprec(RAD_PREC):
                    ratio = xr * (1 + a1 / (n + 1)) * (1 + bc / (n - cabs))
                    if ratio < 1:
                        tail = abs(term) / (1 - ratio)
                        if tail <= target * max(abs_sum, 1):
                            break
            if n >= max_terms:
                raise OutOfDomainError("hypergeometric series converges too slowly", context={"x": str(x)})
    rounding = rad_mul(mpmath.ldexp(8 * n + 8, -bits), abs_sum)
    rad = rad_add(rad_mul(tail, _SLACK), rounding)
    logger.debug("2F1: %d terms", n)
    return ComplexBall.from_mpc(total, rad, bits, _exact(a, b, c, x) and x.rigorous)


@with_precision_retry
def gauss_2f1(a, b, c, x: Ball, digits: int = None) -> ComplexBall:
    _check_parameter_c(c)
    bits = working_bits(digits)
    return hyp2f1_ball(_as_complex(a, bits), _as_complex(b, bits), _as_complex(c, bits), x, bits)


def _is_one(x: Ball) -> bool:
    return not x.rad and x.mid == 1


def y1_ball(x: Ball, z: ComplexBall, bits: int) -> ComplexBall:
    """F(z, -z; 1; x); at x = 1 Gauss's summation gives sin(pi z)/(pi z)."""
    if _is_one(x):
        return sinc_pi_ball(z, bits)
    return hyp2f1_ball(z, -z, ComplexBall.exact(1, 0, bits), x, bits)


def y2_ball(x: Ball, z: ComplexBall, bits: int) -> ComplexBall:
    """(1 - x) F(1 + z, 1 - z; 2; 1 - x); vanishes at x = 1."""
    if _is_one(x):
        return ComplexBall.exact(0, 0, bits)
    if x.upper() > 1 or x.lower() <= 0:
        raise OutOfDomainError("Y2 needs 0 < x <= 1", context={"x": str(x)})
    one_minus = Ball.one(bits) - x
    f = hyp2f1_ball(1 + z, 1 - z, ComplexBall.exact(2, 0, bits), one_minus, bits)
    return f * one_minus


@with_precision_retry
def y1(x: Ball, z, digits: int = None) -> ComplexBall:
    bits = working_bits(digits)
    return y1_ball(x, _as_complex(z, bits), bits)


@with_precision_retry
def y2(x: Ball, z, digits: int = None) -> ComplexBall:
    bits = working_bits(digits)
    return y2_ball(x, _as_complex(z, bits), bits)


# Zeta power series in a small argument


def _series_length(r: mpf, bits: int, start: int = 2) -> int:
    """K with 2 r^K / (1 - r) below 2^-bits."""
    if not r:
        return start
    with mpmath.workprec(RAD_PREC):
        need = bits + 2 - mpmath.log(1 - r, 2)
        return max(start, int(mpmath.ceil(need / -mpmath.log(r, 2))) + 1)


def _zeta_tail(r: mpf, k_max: int) -> mpf:
    """sum_{k > k_max} zeta(k) r^(k-1) with zeta(k) <= 2."""
    with mpmath.workprec(RAD_PREC):
        value = 2 * r ** k_max / (1 - r)
    return rad_mul(value, _SLACK)


def digamma_ball(w: ComplexBall, bits: int) -> ComplexBall:
    """psi(1 + w) = -gamma + sum_{k>=2} (-1)^k zeta(k) w^(k-1)."""
    r = _abs_bound(w)
    if r >= 1:
        raise OutOfDomainError("digamma series needs |w| < 1", context={"w": str(w)})
    k_max = _series_length(r, bits)
    total = ComplexBall.from_ball(-euler_gamma_ball(bits))
    power = ComplexBall.exact(1, 0, bits)
    for k in range(2, k_max + 1):
        power = power * w
        term = power * zeta_at_bits(k, bits)
        total = total + term if k % 2 == 0 else total - term
    return total.inflate(_zeta_tail(r, k_max))


@with_precision_retry
def digamma_near_one(w, digits: int = None) -> ComplexBall:
    bits = working_bits(digits)
    return digamma_ball(_as_complex(w, bits), bits)


def g_kernel_ball(z: ComplexBall, bits: int) -> ComplexBall:
    iz = z.times_i()
    total = digamma_ball(iz, bits) + digamma_ball(-iz, bits) - digamma_ball(z, bits) - digamma_ball(-z, bits)
    return total * Fraction(1, 4)


@with_precision_retry
def g_kernel(z, digits: int = None) -> ComplexBall:
    """(psi(1+iz) + psi(1-iz) - psi(1+z) - psi(1-z)) / 4."""
    bits = working_bits(digits)
    z = _as_complex(z, bits)
    if _abs_bound(z) >= 1:
        raise OutOfDomainError("G needs |z| < 1", context={"z": str(z)})
    return g_kernel_ball(z, bits)


@with_precision_retry
def g_kernel_series(z, digits: int = None) -> ComplexBall:
    """sum over odd m of zeta(2m+1) z^(2m)."""
    bits = working_bits(digits)
    z = _as_complex(z, bits)
    r = _abs_bound(z)
    if r >= 1:
        raise OutOfDomainError("G needs |z| < 1", context={"z": str(z)})
    z2 = z * z
    z4 = z2 * z2
    m_max = _series_length(rad_mul(r, r), bits, 1)
    total = ComplexBall.exact(0, 0, bits)
    power = z2
    m = 1
    while m <= m_max:
        total = total + power * zeta_at_bits(2 * m + 1, bits)
        power = power * z4
        m += 2
    with mpmath.workprec(RAD_PREC):
        tail = 2 * r ** (2 * m) / (1 - r * r)
    return total.inflate(rad_mul(tail, _SLACK))


# The alternating Gamma ratio A(z)


def log_a_ball(z: ComplexBall, bits: int) -> ComplexBall:
    """log A(z) = -z log 2 - sum_{k>=2} zeta(k)/k (z/2)^k ((-1)^k + 2^k - 1)."""
    r = _abs_bound(z)
    if r >= 1:
        raise OutOfDomainError("A(z) series needs |z| < 1", context={"z": str(z)})
    k_max = _series_length(r, bits)
    half = z * Fraction(1, 2)
    total = -(z * log2_ball(bits))
    power = half
    for k in range(2, k_max + 1):
        power = power * half
        weight = (-1) ** k + 2 ** k - 1
        total = total - power * (zeta_at_bits(k, bits) * Fraction(weight, k))
    with mpmath.workprec(RAD_PREC):
        tail = 2 / mpf(k_max + 1) * (r ** (k_max + 1) / (1 - r) + (r / 2) ** (k_max + 1) / (1 - r / 2))
    return total.inflate(rad_mul(tail, _SLACK))


@with_precision_retry
def a_of_z(z, digits: int = None) -> ComplexBall:
    """Gamma(1/2) / (Gamma(1 + z/2) Gamma(1/2 - z/2))."""
    bits = working_bits(digits)
    return log_a_ball(_as_complex(z, bits), bits).exp()


def _alternating_tail(r: int, terms: int, bits: int) -> Ball:
    """sum_{j > terms} ((-1)^j / j)^r."""
    partial = Ball.zero(bits)
    for j in range(1, terms + 1):
        value = Ball.exact(Fraction(1, j ** r), bits)
        partial = partial - value if (j % 2 and r % 2) else partial + value
    if r == 1:
        full = -log2_ball(bits)
    elif r % 2 == 0:
        full = zeta_at_bits(r, bits)
    else:
        full = -(zeta_at_bits(r, bits) * (1 - Fraction(1, 2 ** (r - 1))))
    return full - partial


@with_precision_retry
def a_of_z_product(z, terms: int = 200, orders: int = 10, digits: int = None) -> ComplexBall:
    """prod_{j<=J} (1 + (-1)^j z / j) times exp of the tail's logarithm through order R."""
    bits = working_bits(digits)
    z = _as_complex(z, bits)
    r = _abs_bound(z)
    if r >= terms:
        raise OutOfDomainError("product tail needs |z| < J", context={"terms": terms})
    product = ComplexBall.exact(1, 0, bits)
    for j in range(1, terms + 1):
        step = z * Fraction((-1) ** j, j)
        product = product * (step + 1)
    correction = ComplexBall.exact(0, 0, bits)
    power = ComplexBall.exact(1, 0, bits)
    for order in range(1, orders + 1):
        power = power * z
        term = power * (_alternating_tail(order, terms, bits) * Fraction(1, order))
        correction = correction + term if order % 2 else correction - term
    with mpmath.workprec(RAD_PREC):
        remainder = r ** (orders + 1) / ((orders + 1) * (1 - r / terms) * orders * mpf(terms) ** orders)
    return product * correction.inflate(rad_mul(remainder, _SLACK)).exp()


def alternating_ones_balls(n_max: int, bits: int) -> List[Ball]:
    """zeta({1bar}^n) for n = 0..n_max from power sums by Newton's identities."""
    powers: List[Ball] = [Ball.zero(bits)]
    for r in range(1, n_max + 1):
        if r == 1:
            powers.append(-log2_ball(bits))
        elif r % 2 == 0:
            powers.append(zeta_at_bits(r, bits))
        else:
            powers.append(-(zeta_at_bits(r, bits) * (1 - Fraction(1, 2 ** (r - 1)))))
    values = [Ball.one(bits)]
    for k in range(1, n_max + 1):
        total = Ball.zero(bits)
        for j in range(1, k + 1):
            term = powers[j] * values[k - j]
            total = total + term if j % 2 else total - term
        values.append(total * Fraction(1, k))
    return values


@with_precision_retry
def alternating_ones(n_max: int, digits: int = None) -> List[Ball]:
    return alternating_ones_balls(n_max, working_bits(digits))


# Products of sinc values


def sinc_rotation_product(t: Ball, n: int, bits: int, twist: Fraction = Fraction(0)) -> ComplexBall:
    """prod_{j<n} sinc(pi t e^{i pi (j/n + twist)})."""
    result = ComplexBall.exact(1, 0, bits)
    tc = ComplexBall.from_ball(t)
    for j in range(n):
        rotated = tc * unit_root(Fraction(j, n) + twist, bits)
        result = result * sinc_pi_ball(rotated, bits)
    return result


def _real_part(value: ComplexBall) -> Ball:
    if not value.im.contains_zero():
        logger.warning("imaginary part %s of a real product excludes zero", value.im)
    return value.re.inflate(value.im.abs_upper())


def sinc_series_side(t: Ball, n: int, bits: int, terms: Optional[int] = None) -> Ball:
    """sum_k (-1)^k t^(2kn) zeta({2n}^k) with the exact pi-multiples, plus tail."""
    from app.services.symbolic.zeta_symbols import period1_exact

    zeta_2n = zeta_at_bits(2 * n, bits)
    with mpmath.workprec(RAD_PREC):
        y = rad_mul(t.abs_upper() ** (2 * n), zeta_2n.abs_upper())
    if terms is None:
        terms = 1
        with mpmath.workprec(RAD_PREC):
            while y ** (terms + 1) / mpmath.factorial(terms + 1) * mpmath.exp(y) > mpmath.ldexp(1, -bits):
                terms += 1
    pi = pi_ball(bits)
    t_power = t ** (2 * n)
    total = Ball.zero(bits)
    running = Ball.one(bits)
    for k in range(terms + 1):
        exact = period1_exact(2 * n, k)
        term = running * (pi ** exact.power) * exact.coefficient
        total = total + term if k % 2 == 0 else total - term
        running = running * t_power
    with mpmath.workprec(RAD_PREC):
        tail = y ** (terms + 1) / mpmath.factorial(terms + 1) * mpmath.exp(y)
    return total.inflate(rad_mul(tail, _SLACK))


@with_precision_retry
def sinc_zeta_product(t: Ball, n: int, digits: int = None, terms: Optional[int] = None) -> Tuple[Ball, Ball]:
    """Both sides of sum_k (-1)^k t^(2kn) zeta({2n}^k) = prod_{j<n} sinc(pi t rho^j), rho = e^{i pi/n}."""
    if n < 1:
        raise OutOfDomainError("n must be a positive integer", context={"n": n})
    bits = working_bits(digits)
    lhs = sinc_series_side(t, n, bits, terms)
    rhs = _real_part(sinc_rotation_product(t, n, bits))
    return lhs, rhs


@with_precision_retry
def period1_product(t: Ball, s: int, digits: int = None) -> Ball:
    """prod_{j>=1} (1 + t^s / j^s)."""
    bits = working_bits(digits)
    if s < 2:
        raise OutOfDomainError("the product needs s >= 2", context={"s": s})
    if s % 2 == 0:
        n = s // 2
        return _real_part(sinc_rotation_product(t, n, bits, Fraction(1, s)))
    r = t.abs_upper()
    if r >= 1:
        raise OutOfDomainError("odd s needs |t| < 1", context={"t": str(t)})
    with mpmath.workprec(RAD_PREC):
        rs = r ** s
    m_max = _series_length(rs, bits, 1)
    total = Ball.zero(bits)
    ts = t ** s
    power = Ball.one(bits)
    for m in range(1, m_max + 1):
        power = power * ts
        term = power * zeta_at_bits(s * m, bits) * Fraction(1, m)
        total = total + term if m % 2 else total - term
    with mpmath.workprec(RAD_PREC):
        tail = 2 * rs ** (m_max + 1) / ((m_max + 1) * (1 - rs))
    return total.inflate(rad_mul(tail, _SLACK)).exp()
