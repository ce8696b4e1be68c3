# app/services/numerics/nested_sums.py
"""Truncated nested sums

    sum_{n_1 > ... > n_k > 0} prod_j P_j^{n_j - n_{j+1}} n_j^{-m_j},   n_{k+1} = 0,

written in prefix-product form so every factor has modulus <= 1. The
recurrence runs over n = 1..N keeping one accumulator per depth.
"""
import logging
import math
from typing import List, Sequence, Tuple

import mpmath
from mpmath import mpf

from app.models.ball import RAD_PREC, mpf_upper, rad_add, rad_mul

logger = logging.getLogger(__name__)


def nested_sum(weights: Sequence[int], prefixes: Sequence, n_terms: int, bits: int):
    """Partial sum over n_1 <= n_terms; prefixes are mpf or mpc values."""
    k = len(weights)
    with mpmath.workprec(bits):
        p = [mpmath.mpmathify(v) for v in prefixes]
        zero = mpf(0)
        acc = [zero] * k
        previous = [zero] * k + [mpf(1)]
        total = zero
        distinct = sorted(set(weights))
        for n in range(1, n_terms + 1):
            inv = mpf(1) / n
            powers = {m: inv ** m for m in distinct}
            current = [zero] * (k + 1)
            for j in range(k):
                acc[j] = p[j] * (acc[j] + previous[j + 1])
                current[j] = acc[j] * powers[weights[j]]
            total += current[0]
            previous = current
        return total


def chain_count_tail(rho, depth: int, n: int) -> mpf:
    """Upper bound for sum_{m > n} C(m-1, depth-1) rho^m."""
    if not rho:
        return mpf(0)
    if n < depth:
        return mpmath.inf
    with mpmath.workprec(RAD_PREC):
        r = mpf_upper(rho)
        ratio = r * (n + 1) / (n + 2 - depth)
        if ratio >= 1:
            return mpmath.inf
        first = r ** (n + 1) * math.comb(n, depth - 1)
        bound = first / (1 - ratio)
    return rad_mul(bound, 1 + mpmath.ldexp(1, -40))


def geometric_truncation(rho, depth: int, bits: int, cap: int) -> Tuple[int, mpf]:
    """Smallest N <= cap whose tail is below 2^-bits, with that tail bound."""
    target = mpmath.ldexp(1, -bits)
    if not rho:
        return depth, mpf(0)
    with mpmath.workprec(RAD_PREC):
        guess = int(bits * math.log(2) / -float(mpmath.log(mpf_upper(rho)))) if rho < 1 else cap
    n = min(max(depth, guess, 8), cap)
    while True:
        tail = chain_count_tail(rho, depth, n)
        if tail <= target or n >= cap:
            break
        n = min(cap, int(n * 1.25) + 1)
    if tail > target:
        logger.debug("truncation capped at %d terms, tail %s", n, mpmath.nstr(tail, 3))
    return n, tail


def geometric_rounding(n_terms: int, depth: int, rho, bits: int) -> mpf:
    """Accumulated rounding error of nested_sum when every |P_j| <= rho < 1."""
    with mpmath.workprec(RAD_PREC):
        magnitude = (1 / (1 - mpf_upper(rho))) ** (depth + 1)
    return rad_mul(mpmath.ldexp(16 * n_terms * (depth + 2), -bits), magnitude)


def harmonic_rounding(n_terms: int, depth: int, bits: int) -> mpf:
    """Accumulated rounding error of nested_sum when every |P_j| = 1."""
    with mpmath.workprec(RAD_PREC):
        magnitude = (1 + mpmath.log(n_terms)) ** depth
    return rad_mul(mpmath.ldexp(16 * n_terms * (depth + 2), -bits), rad_add(magnitude, 1))


def perturbation_bound(rho, depth: int, deltas: List) -> mpf:
    """Change of the full sum when each P_j moves by at most deltas[j] within the rho-disc."""
    if not any(deltas):
        return mpf(0)
    with mpmath.workprec(RAD_PREC):
        r = mpf_upper(rho)
        slope = depth * r ** (depth - 1) / (1 - r) ** (depth + 1)
    return rad_mul(slope, rad_add(*deltas))


def log_power_tail(n: int, sigma: int, m: int) -> mpf:
    """Upper bound for the integral of t^-sigma (1 + ln t)^m over [n, inf), sigma > 1."""
    with mpmath.workprec(RAD_PREC + 10):
        a = mpf(sigma - 1)
        u0 = 1 + mpmath.log(n)
        total = mpf(0)
        falling = 1
        for i in range(m + 1):
            total += falling * u0 ** (m - i) / a ** (i + 1)
            falling *= m - i
        value = mpf(n) ** (-a) * total
    return rad_mul(value, 1 + mpmath.ldexp(1, -40))


def log_power_decreasing(n: int, sigma: int, m: int) -> bool:
    """t^-sigma (1 + ln t)^m is decreasing on [n, inf)."""
    return sigma * (1 + math.log(n)) >= m
