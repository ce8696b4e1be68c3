# app/services/numerics/riemann.py
import logging
import math
from functools import lru_cache
from typing import Sequence

import mpmath
from mpmath import mpf

from app.core.errors import DivergentError
from app.models.ball import Ball, fraction_to_mpf, rad_add, rad_mul
from app.services.combinatorics.combinatorics import bernoulli, zeta_even_rational
from app.services.numerics.precision import pi_ball, with_precision_retry, working_bits

logger = logging.getLogger(__name__)


def convergence_region(realparts: Sequence[float]) -> bool:
    """True when sum_{j<=r} Re(s_j) > r for every prefix length r."""
    total = 0.0
    for r, s in enumerate(realparts, start=1):
        total += float(s)
        if total <= r:
            return False
    return True


@with_precision_retry
def zeta_riemann(s: int, digits: int = None) -> Ball:
    return zeta_at_bits(s, working_bits(digits))


@lru_cache(maxsize=512)
def zeta_at_bits(s: int, bits: int) -> Ball:
    if s <= 1:
        raise DivergentError(f"zeta({s}) diverges", context={"s": s})
    if s % 2 == 0:
        return Ball.exact(zeta_even_rational(s // 2), bits) * pi_ball(bits) ** s
    return _euler_maclaurin(s, bits)


def _euler_maclaurin(s: int, bits: int) -> Ball:
    """sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2 + sum_{k<=M} B_2k/(2k)! (s)_{2k-1} N^{1-s-2k}."""
    n_terms = math.ceil(0.3 * bits) + 10
    m_terms = n_terms
    with mpmath.workprec(bits):
        big_n = mpf(n_terms)
        total = mpf(0)
        for n in range(1, n_terms):
            total += mpf(n) ** (-s)
        total += big_n ** (1 - s) / (s - 1) + big_n ** (-s) / 2
        rising = s
        for k in range(1, m_terms + 1):
            coeff = fraction_to_mpf(bernoulli(2 * k) / math.factorial(2 * k), bits)
            total += coeff * rising * big_n ** (1 - s - 2 * k)
            rising *= (s + 2 * k - 1) * (s + 2 * k)
        k = m_terms + 1
        next_term = abs(fraction_to_mpf(bernoulli(2 * k) / math.factorial(2 * k), 53)) * rising * big_n ** (1 - s - 2 * k)
    remainder = rad_mul(next_term, 2)
    rounding = mpmath.ldexp(8 * (n_terms + 2 * m_terms), -bits)
    logger.debug("zeta(%d): N=M=%d, remainder %s", s, n_terms, mpmath.nstr(remainder, 3))
    return Ball(total, rad_add(remainder, rounding), bits)
