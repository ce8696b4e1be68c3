# app/services/numerics/quadrature.py
"""Tensor Gauss-Legendre evaluation of the chain-integral representation

    Li_s(x) = int over 1 > u_1^(j) > ... > u_{s_j}^(j) > 0 of
              prod_j tau(prod_{m<=j} x_m u_{s_m}^(m)) prod_r du_r^(j) / u_r^(j),

with tau(y) = y / (1 - y). Writing u_r = w_1 ... w_r maps each chain onto the
unit cube and cancels every 1/u factor, leaving a smooth integrand that
depends on chain j only through U_j = w_1 ... w_{s_j}.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import mpmath
import numpy as np

from app.core.config import get_settings
from app.core.errors import OutOfDomainError, UnsupportedError
from app.models.ball import Ball, rad_add
from app.models.words import Composition

logger = logging.getLogger(__name__)

MAX_DEPTH = 2
MAX_PART = 3
_CHUNK = 4096


@lru_cache(maxsize=32)
def _legendre_unit(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def _chain_products(part: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Every product w_1...w_part on the tensor grid, with its tensor weight."""
    nodes, weights = _legendre_unit(order)
    values = np.ones(1)
    mass = np.ones(1)
    for _ in range(part):
        values = np.multiply.outer(values, nodes).ravel()
        mass = np.multiply.outer(mass, weights).ravel()
    return values, mass


def _integrate(parts: Sequence[int], xs: Sequence[float], order: int) -> float:
    k = len(parts)
    grids = [_chain_products(p, order) for p in parts]
    # prod_m x_m^(k-m+1) U_m^(k-m) / prod_j (1 - prod_{m<=j} x_m U_m)
    constant = 1.0
    for m, x in enumerate(xs, start=1):
        constant *= x ** (k - m + 1)
    if k == 1:
        u, w = grids[0]
        return constant * float(np.sum(w / (1.0 - xs[0] * u)))
    (u1, w1), (u2, w2) = grids
    total = 0.0
    for start in range(0, len(u1), _CHUNK):
        a = u1[start:start + _CHUNK][:, None]
        wa = w1[start:start + _CHUNK][:, None]
        p1 = xs[0] * a
        p2 = p1 * xs[1] * u2[None, :]
        block = wa * w2[None, :] * a / ((1.0 - p1) * (1.0 - p2))
        total += float(np.sum(block))
    return constant * total


def new_integral_eval(s: Composition, x: Sequence[Fraction], quad_order: Optional[int] = None) -> Ball:
    """Quadrature at orders n and 2n; the radius is their difference and is not rigorous."""
    if s.depth == 0:
        return Ball.one()
    if s.depth > MAX_DEPTH:
        raise UnsupportedError(f"depth {s.depth} exceeds the supported {MAX_DEPTH}", context={"s": s.to_text()})
    if any(p > MAX_PART for p in s.parts):
        raise UnsupportedError(f"parts above {MAX_PART} are not supported", context={"s": s.to_text()})
    if len(x) != s.depth:
        raise OutOfDomainError("need one x per part", context={"s": s.to_text(), "x": [str(v) for v in x]})
    if any(not 0 < Fraction(v) < 1 for v in x):
        raise OutOfDomainError("every x_j must lie in (0, 1)", context={"x": [str(v) for v in x]})
    order = quad_order or get_settings().QUADRATURE_ORDER
    xs = [float(Fraction(v)) for v in x]
    coarse = _integrate(s.parts, xs, order)
    fine = _integrate(s.parts, xs, 2 * order)
    with mpmath.workprec(53):
        mid = mpmath.mpf(fine)
        estimate = abs(mpmath.mpf(fine) - mpmath.mpf(coarse))
        floor = abs(mid) * mpmath.ldexp(1, -48)
    logger.debug("new integral %s at n=%d: |I_n - I_2n| = %s", s, order, mpmath.nstr(estimate, 3))
    return Ball(mid, rad_add(estimate, floor), 53, rigorous=False)
