# tests/conftest.py
from fractions import Fraction
from typing import Callable, Union

import mpmath
import pytest

from app.core.config import get_settings
from app.models.ball import Ball, ComplexBall, to_fraction

TEST_DIGITS = 30

Oracle = Callable[[], Union[mpmath.mpf, mpmath.mpc]]


@pytest.fixture
def digits() -> int:
    return TEST_DIGITS


@pytest.fixture
def settings():
    return get_settings()


def oracle(fn: Oracle, dps: int = 80):
    """Evaluate an mpmath expression well beyond the test precision."""
    with mpmath.workdps(dps):
        return +fn()


def assert_close(value: Union[Ball, ComplexBall], expected, tol: float = 1e-25) -> None:
    """|mid - expected| must sit within the radius plus `tol`."""
    if isinstance(value, ComplexBall):
        expected = mpmath.mpmathify(expected)
        assert_close(value.re, mpmath.re(expected), tol)
        assert_close(value.im, mpmath.im(expected), tol)
        return
    target = to_fraction(expected) if isinstance(expected, mpmath.mpf) else Fraction(expected)
    gap = abs(to_fraction(value.mid) - target)
    assert gap <= to_fraction(value.rad) + Fraction(tol), f"{value} is {float(gap):.3e} away from {float(target)}"
