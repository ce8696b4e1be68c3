# app/services/numerics/euler_sums.py
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath

from app.core.config import get_settings
from app.core.errors import DivergentError, EnclosureError, OutOfDomainError
from app.models.arguments import SignedComposition
from app.models.ball import Ball, ComplexBall, fraction_to_mpf, rad_add, rad_mul, to_fraction, ulp_bound
from app.models.words import Composition
from app.services.numerics.nested_sums import (
    geometric_rounding,
    geometric_truncation,
    harmonic_rounding,
    log_power_decreasing,
    log_power_tail,
    nested_sum,
    perturbation_bound,
)
from app.services.numerics.precision import with_precision_retry, working_bits

logger = logging.getLogger(__name__)


def _require_admissible(arg: SignedComposition) -> None:
    if not arg.is_admissible:
        raise DivergentError("x=s1=σ1=1 excluded", context={"argument": arg.to_text()})


def _prefix_signs(signs: Sequence[int]) -> List[int]:
    out, running = [], 1
    for s in signs:
        running *= s
        out.append(running)
    return out


@with_precision_retry
def euler_sum_eval(arg: SignedComposition, digits: int = None) -> Ball:
    """Direct truncated summation of zeta_x(s; sigma)."""
    bits = working_bits(digits)
    _require_admissible(arg)
    if arg.depth == 0:
        return Ball.one(bits)
    if arg.x == 0:
        return Ball.zero(bits)
    if arg.x < 1:
        return _geometric_sum(arg, bits)
    return _direct_sum(arg, bits)


def _geometric_sum(arg: SignedComposition, bits: int) -> Ball:
    prefixes = [arg.x * s for s in _prefix_signs(arg.signs)]
    values = [fraction_to_mpf(p, bits) for p in prefixes]
    deltas = [fraction_to_mpf(abs(to_fraction(v) - p), 53, "c") for v, p in zip(values, prefixes)]
    rho = fraction_to_mpf(arg.x, 53, "c")
    cap = 4 * get_settings().MAX_SERIES_TERMS
    n_terms, tail = geometric_truncation(rho, arg.depth, bits, cap)
    value = nested_sum(arg.parts, values, n_terms, bits)
    rad = rad_add(
        tail,
        geometric_rounding(n_terms, arg.depth, rho, bits),
        perturbation_bound(rho, arg.depth, deltas),
    )
    logger.debug("%s: %d terms, tail %s", arg, n_terms, mpmath.nstr(tail, 3))
    return Ball(value, rad, bits)


def _direct_sum(arg: SignedComposition, bits: int) -> Ball:
    n_terms = get_settings().MAX_SERIES_TERMS
    n_terms += n_terms % 2
    s1, k = arg.parts[0], arg.depth
    if arg.signs[0] == 1:
        sigma, scale = s1, 1
    else:
        # pairs (n, n+1) of the alternating outer sum
        sigma, scale = s1 + 1, s1 + 1
    if not log_power_decreasing(n_terms, sigma, k - 1):
        raise EnclosureError("tail bound not applicable at this depth", context={"argument": arg.to_text()})
    tail = rad_mul(log_power_tail(n_terms, sigma, k - 1), scale)
    value = nested_sum(arg.parts, _prefix_signs(arg.signs), n_terms, bits)
    rad = rad_add(tail, harmonic_rounding(n_terms, k, bits))
    logger.debug("%s: %d terms, tail %s", arg, n_terms, mpmath.nstr(tail, 3))
    return Ball(value, rad, bits)


# Hölder split at 1/2


def holder_letters(arg: SignedComposition) -> Tuple[int, ...]:
    """Letters of the iterated-integral word: zeros then the running sign product, per part."""
    letters: List[int] = []
    for part, b in zip(arg.parts, _prefix_signs(arg.signs)):
        letters.extend([0] * (part - 1))
        letters.append(b)
    return tuple(letters)


@lru_cache(maxsize=8192)
def g_at_half(letters: Tuple[int, ...], bits: int) -> Ball:
    """G(letters; 1/2) for letters in {0, 1, -1, 2} with a nonzero last letter."""
    if not letters:
        return Ball.one(bits)
    if letters[-1] == 0:
        raise OutOfDomainError("word must end in a nonzero letter", context={"letters": list(letters)})
    weights: List[int] = []
    prefixes: List[Fraction] = []
    zeros = 0
    for c in letters:
        if c == 0:
            zeros += 1
            continue
        weights.append(zeros + 1)
        prefixes.append(Fraction(1, 2 * c))
        zeros = 0
    depth = len(weights)
    rho = max(abs(p) for p in prefixes)
    n_terms, tail = geometric_truncation(rho, depth, bits, 50 * bits)
    value = nested_sum(weights, [fraction_to_mpf(p, bits) for p in prefixes], n_terms, bits)
    rad = rad_add(tail, geometric_rounding(n_terms, depth, rho, bits))
    ball = Ball(value, rad, bits)
    return -ball if depth % 2 else ball


def holder_value(letters: Tuple[int, ...], bits: int) -> Ball:
    """G(letters; 1) as sum_j (-1)^j G(1-a_j..1-a_1; 1/2) G(a_{j+1}..a_w; 1/2)."""
    total = Ball.zero(bits)
    for j in range(len(letters) + 1):
        left = tuple(1 - a for a in reversed(letters[:j]))
        term = g_at_half(left, bits) * g_at_half(letters[j:], bits)
        total = total - term if j % 2 else total + term
    return total


def holder_euler_sum(arg: SignedComposition, bits: int) -> Ball:
    _require_admissible(arg)
    if arg.depth == 0:
        return Ball.one(bits)
    value = holder_value(holder_letters(arg), bits)
    return -value if arg.depth % 2 else value


@with_precision_retry
def mzv_eval(s: Composition, digits: int = None) -> Ball:
    """zeta(s) through the Hölder split; s_1 = 1 diverges."""
    if s.depth and s.parts[0] == 1:
        raise DivergentError(f"zeta{s} diverges: s_1 = 1", context={"composition": s.to_text()})
    return holder_euler_sum(SignedComposition.from_composition(s), working_bits(digits))


@with_precision_retry
def euler_sum_value(arg: SignedComposition, digits: int = None) -> Ball:
    """Best available route: Hölder split at x = 1, geometric summation below."""
    bits = working_bits(digits)
    _require_admissible(arg)
    if arg.x == 1 and arg.depth:
        return holder_euler_sum(arg, bits)
    return euler_sum_eval(arg, digits=digits)


# General multiple polylogarithms


def _exact_rational(z: ComplexBall) -> Optional[Fraction]:
    if z.im.mid or z.im.rad or z.re.rad:
        return None
    return to_fraction(z.re.mid)


def as_signed_composition(s: Sequence[int], z: Sequence[ComplexBall]) -> Optional[SignedComposition]:
    """Reduce Li_s(z) to zeta_x(s; sigma) when z = (+-x, +-1, ..., +-1) exactly."""
    values = [_exact_rational(v) for v in z]
    if not values or any(v is None for v in values):
        return None
    if any(abs(v) != 1 for v in values[1:]) or abs(values[0]) > 1:
        return None
    x = abs(values[0])
    signs = [1 if v >= 0 else -1 for v in values]
    arg = SignedComposition(tuple(s), tuple(signs), x)
    return arg if arg.is_admissible else None


@with_precision_retry
def multiple_polylog_eval(s: Sequence[int], z: Sequence[ComplexBall], digits: int = None) -> ComplexBall:
    bits = working_bits(digits)
    if len(s) != len(z):
        raise OutOfDomainError("need one argument per index", context={"s": list(s), "z": len(z)})
    if any(v < 1 for v in s):
        raise OutOfDomainError("indices must be positive integers", context={"s": list(s)})
    if not s:
        return ComplexBall.exact(1, 0, bits)
    reduced = as_signed_composition(s, z)
    if reduced is not None:
        return ComplexBall.from_ball(euler_sum_value(reduced, digits=digits))
    prefixes: List[ComplexBall] = []
    running = ComplexBall.exact(1, 0, bits)
    for v in z:
        running = running * v
        prefixes.append(running)
    rho = max(p.abs_upper() for p in prefixes)
    if rho >= 1:
        raise OutOfDomainError(
            "prefix products must have modulus < 1",
            context={"s": list(s), "max_prefix_modulus": mpmath.nstr(rho, 6)},
        )
    depth = len(s)
    n_terms, tail = geometric_truncation(rho, depth, bits, 4 * get_settings().MAX_SERIES_TERMS)
    value = nested_sum(s, [p.mid for p in prefixes], n_terms, bits)
    deltas = [rad_add(p.rad_upper(), ulp_bound(p.abs_mid(), bits, 2)) for p in prefixes]
    rad = rad_add(
        tail,
        rad_mul(geometric_rounding(n_terms, depth, rho, bits), 2),
        perturbation_bound(rho, depth, deltas),
    )
    rigorous = all(v.rigorous for v in z)
    return ComplexBall.from_mpc(value, rad, bits, rigorous)
