# app/services/numerics/precision.py
import logging
import math
from functools import lru_cache, wraps
from typing import Callable, Optional, TypeVar

import mpmath

from app.core.config import get_settings
from app.core.errors import EnclosureError
from app.models.ball import Ball, ComplexBall, ulp_bound

logger = logging.getLogger(__name__)

T = TypeVar("T")


def resolve_digits(digits: Optional[int]) -> int:
    return digits if digits else get_settings().PRECISION_DIGITS


def working_bits(digits: int) -> int:
    """Binary precision for `digits` decimal digits plus the configured guard digits."""
    return math.ceil((digits + get_settings().GUARD_DIGITS) * math.log2(10))


def _is_finite(value) -> bool:
    if isinstance(value, (Ball, ComplexBall)):
        return value.is_finite
    if isinstance(value, (tuple, list)):
        return all(_is_finite(v) for v in value)
    return True


def with_precision_retry(fn: Callable[..., T]) -> Callable[..., T]:
    """Run an evaluator at the requested digits; on enclosure failure retry once at double."""

    @wraps(fn)
    def wrapper(*args, digits: Optional[int] = None, **kwargs) -> T:
        d = resolve_digits(digits)
        try:
            result = fn(*args, digits=d, **kwargs)
            if _is_finite(result):
                return result
            reason = "non-finite enclosure"
        except EnclosureError as e:
            reason = e.message
        logger.warning("%s: %s at %d digits, retrying at %d", fn.__name__, reason, d, 2 * d)
        try:
            result = fn(*args, digits=2 * d, **kwargs)
        except EnclosureError as e:
            raise EnclosureError(
                f"{fn.__name__} failed after raising precision",
                cause=e,
                context={"digits": 2 * d},
            )
        if not _is_finite(result):
            raise EnclosureError(f"{fn.__name__} produced a non-finite enclosure", context={"digits": 2 * d})
        return result

    return wrapper


def _constant(value, bits: int) -> Ball:
    with mpmath.workprec(bits):
        mid = +value
    return Ball(mid, ulp_bound(mid, bits, 2), bits)


@lru_cache(maxsize=64)
def pi_ball(bits: int) -> Ball:
    return _constant(mpmath.pi, bits)


@lru_cache(maxsize=64)
def euler_gamma_ball(bits: int) -> Ball:
    return _constant(mpmath.euler, bits)


@lru_cache(maxsize=64)
def log2_ball(bits: int) -> Ball:
    return _constant(mpmath.ln2, bits)
