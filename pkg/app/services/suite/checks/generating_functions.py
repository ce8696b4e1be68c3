# app/services/suite/checks/generating_functions.py
"""Truncated generating-function series against their special-function closed forms.

Each family returns the left side with its truncation bound folded into the
radius, so a pass means the two enclosures agree to within the tolerance.
"""
import logging
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import mpmath
from mpmath import mpf

from app.core.config import get_settings
from app.core.errors import NotFoundError, OutOfDomainError
from app.models.arguments import SignedComposition
from app.models.ball import Ball, ComplexBall, RAD_PREC, fraction_to_mpf, rad_mul
from app.models.check import CheckResult
from app.models.words import Composition
from app.services.numerics.euler_sums import euler_sum_value, mzv_eval
from app.services.numerics.precision import working_bits
from app.services.numerics.riemann import zeta_riemann
from app.services.numerics.special import (
    a_of_z,
    a_of_z_product,
    alternating_ones,
    g_kernel,
    period1_product,
    sinc_zeta_product,
    y1,
    y2,
)
from app.services.suite.checks.check_registry import BaseCheck
from app.services.suite.checks.results import exact_result, fraction_param, int_param, numeric_result
from app.services.symbolic.zeta_symbols import drin_coefficient, evaluate_symbolic, period1_reduce

logger = logging.getLogger(__name__)

_SLACK = 1 + mpmath.ldexp(1, -40)

Family = Callable[[Dict[str, Any], int, Optional[float]], List[CheckResult]]

NAME = "generating_function"


def _gf_tolerance(override: Optional[float]) -> float:
    return get_settings().GF_TOLERANCE if override is None else override


def _unit_interval(x: Fraction) -> Fraction:
    if not 0 <= x <= 1:
        raise OutOfDomainError("x must lie in [0, 1]", context={"x": str(x)})
    return x


def _upper(value: Fraction) -> mpf:
    return fraction_to_mpf(abs(value), RAD_PREC, "c")


def _zeta_x(parts, signs, x: Fraction, digits: int) -> Ball:
    return euler_sum_value(SignedComposition(tuple(parts), tuple(signs), x), digits=digits)


# zfact: sum (-1)^n z^(4n) 4^n zeta_x({3,1}^n) = Y1(x, z) Y1(x, iz)


def zfact(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    x = _unit_interval(fraction_param(params, "x", "1/2"))
    z = fraction_param(params, "z", "3/10")
    n_terms = int_param(params, "N", 6)
    lhs = Ball.zero()
    step = 4 * z ** 4
    for n in range(n_terms + 1):
        term = _zeta_x((3, 1) * n, (1,) * (2 * n), x, digits) * step ** n
        lhs = lhs + term if n % 2 == 0 else lhs - term
    # |4^n zeta_x({3,1}^n)| <= 4^n 2 pi^(4n) / (4n+2)!; ratios of successive bounds decrease
    with mpmath.workprec(RAD_PREC):
        r4 = 4 * _upper(z) ** 4 * mpmath.pi ** 4
        n = n_terms + 1
        first = (r4 ** n) * 2 / mpmath.factorial(4 * n + 2)
        ratio = r4 / ((4 * n + 6) * (4 * n + 5) * (4 * n + 4) * (4 * n + 3))
    if ratio >= 1:
        raise OutOfDomainError("z too large for the truncation bound", context={"z": str(z), "N": n_terms})
    with mpmath.workprec(RAD_PREC):
        tail = rad_mul(first / (1 - ratio), _SLACK)
    bits = working_bits(digits)
    xb = Ball.exact(x, bits)
    rhs = y1(xb, ComplexBall.exact(z, 0, bits), digits=digits) * y1(xb, ComplexBall.exact(0, z, bits), digits=digits)
    return [numeric_result(
        NAME,
        {"family": "zfact", "x": str(x), "z": str(z), "N": n_terms},
        lhs.inflate(tail),
        rhs,
        _gf_tolerance(tolerance),
        digits,
        notes=f"truncation bound {mpmath.nstr(tail, 3)}",
    )]


# z313gf: sum (-1)^n z^(4n+2) 4^n zeta_x(3,{1,3}^n)
#   = G(z) Y1(x,z) Y1(x,iz) - Y1(x,iz) Y2(x,z) / (4 Y1(1,z)) + Y1(x,z) Y2(x,iz) / (4 Y1(1,iz))


def z313gf(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    x = _unit_interval(fraction_param(params, "x", "1/2"))
    z = fraction_param(params, "z", "3/10")
    n_terms = int_param(params, "N", 6)
    if abs(z) >= 1:
        raise OutOfDomainError("z313gf needs |z| < 1", context={"z": str(z)})
    lhs = Ball.zero()
    for n in range(n_terms + 1):
        term = _zeta_x((3,) + (1, 3) * n, (1,) * (2 * n + 1), x, digits) * (z ** (4 * n + 2) * 4 ** n)
        lhs = lhs + term if n % 2 == 0 else lhs - term
    # 4^n zeta(3,{1,3}^n) <= zeta(3) prod_j (1 + 1/j^4) < 5 zeta(3)
    with mpmath.workprec(RAD_PREC):
        r = _upper(z)
        tail = rad_mul(5 * mpmath.zeta(3) * r ** (4 * n_terms + 6) / (1 - r ** 4), _SLACK)
    bits = working_bits(digits)
    xb = Ball.exact(x, bits)
    one = Ball.one(bits)
    zc = ComplexBall.exact(z, 0, bits)
    iz = ComplexBall.exact(0, z, bits)
    y1z, y1iz = y1(xb, zc, digits=digits), y1(xb, iz, digits=digits)
    rhs = (
        g_kernel(zc, digits=digits) * y1z * y1iz
        - y1iz * y2(xb, zc, digits=digits) / (y1(one, zc, digits=digits) * 4)
        + y1z * y2(xb, iz, digits=digits) / (y1(one, iz, digits=digits) * 4)
    )
    return [numeric_result(
        NAME,
        {"family": "z313gf", "x": str(x), "z": str(z), "N": n_terms},
        lhs.inflate(tail),
        rhs,
        _gf_tolerance(tolerance),
        digits,
        notes=f"truncation bound {mpmath.nstr(tail, 3)}",
    )]


# mgf: sum_m t^m zeta_x(1bar, 1, 1bar, ...) = U(s,-z) U(s,iz) / (A(-z) A(iz)),
# z = (1+i) t / 2, s = (1+x)/2, U(s,w) = Y1(s,w) - w Y2(s,w)


def _alternating_ones_x(depth: int, x: Fraction, digits: int) -> Ball:
    signs = tuple(-1 if j % 2 == 0 else 1 for j in range(depth))
    return _zeta_x((1,) * depth, signs, x, digits)


def mgf(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    x = _unit_interval(fraction_param(params, "x", "1/2"))
    t = fraction_param(params, "t", "3/10")
    n_terms = int_param(params, "N", 16)
    settings = get_settings()
    coefficients = [_alternating_ones_x(m, x, digits) for m in range(n_terms + 1)]
    lhs = Ball.zero()
    for m, c in enumerate(coefficients):
        lhs = lhs + c * t ** m
    rigorous = x < 1
    with mpmath.workprec(RAD_PREC):
        r = _upper(t)
        if rigorous:
            # |zeta_x({1}^m with signs)| <= Li_{{1}^m}(x) = (-log(1-x))^m / m!
            y = r * -mpmath.log(1 - mpf(x.numerator) / x.denominator)
            tail = y ** (n_terms + 1) / mpmath.factorial(n_terms + 1) * mpmath.exp(y)
        else:
            if r >= 1:
                raise OutOfDomainError("mgf at x = 1 needs |t| < 1", context={"t": str(t)})
            last = max(coefficients[-1].abs_upper(), coefficients[-2].abs_upper() if n_terms else 0, 1)
            tail = last * r ** (n_terms + 1) / (1 - r)
        tail = rad_mul(tail, _SLACK)
    if not rigorous:
        lhs = lhs.with_rigorous(False)
    bits = working_bits(digits)
    s = Ball.exact((1 + x) / 2, bits)
    z = ComplexBall.exact(t / 2, t / 2, bits)

    def u(w: ComplexBall) -> ComplexBall:
        return y1(s, w, digits=digits) - w * y2(s, w, digits=digits)

    rhs = u(-z) * u(z.times_i()) / (a_of_z(-z, digits=digits) * a_of_z(z.times_i(), digits=digits))
    if tolerance is None:
        tolerance = settings.GF_TOLERANCE if rigorous else settings.ALTERNATING_TOLERANCE
    return [numeric_result(
        NAME,
        {"family": "mgf", "x": str(x), "t": str(t), "N": n_terms},
        lhs.inflate(tail),
        rhs,
        tolerance,
        digits,
        notes=("truncation bound " if rigorous else "estimated truncation error ") + mpmath.nstr(tail, 3),
    )]


# drin: coefficient of x^(m+1) y^(n+1) is zeta(m+2, {1}^n)


def drin(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    if "m" in params or "n" in params:
        pairs = [(int_param(params, "m", 0), int_param(params, "n", 0))]
    else:
        total = int_param(params, "max_total", 6)
        pairs = [(m, k - m) for k in range(total + 1) for m in range(k + 1)]
    tol = get_settings().MZV_TOLERANCE if tolerance is None else tolerance
    results = []
    for m, n in pairs:
        coefficient = drin_coefficient(m, n)
        mirrored = drin_coefficient(n, m)
        params_out = {"family": "drin", "m": m, "n": n}
        results.append(numeric_result(
            NAME,
            params_out,
            evaluate_symbolic(coefficient, digits=digits),
            mzv_eval(Composition((m + 2,) + (1,) * n), digits=digits),
            tol,
            digits,
            notes=str(coefficient),
        ))
        results.append(exact_result(
            NAME, {**params_out, "route": "symmetry"}, coefficient, mirrored, coefficient == mirrored,
        ))
    return results


# period1: sum_k t^(ks) zeta({s}^k) = prod_j (1 + t^s / j^s)


def period1(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    s = int_param(params, "s", 3)
    t = fraction_param(params, "t", "1/2")
    n_terms = int_param(params, "N", 12)
    if s < 2:
        raise OutOfDomainError("period1 needs s >= 2", context={"s": s})
    lhs = Ball.zero()
    ts = t ** s
    for k in range(n_terms + 1):
        lhs = lhs + evaluate_symbolic(period1_reduce(k).instantiate(s), digits=digits) * ts ** k
    # zeta({s}^k) <= zeta(s)^k / k!
    zeta_s = zeta_riemann(s, digits=digits).abs_upper()
    with mpmath.workprec(RAD_PREC):
        y = _upper(ts) * zeta_s
        tail = rad_mul(y ** (n_terms + 1) / mpmath.factorial(n_terms + 1) * mpmath.exp(y), _SLACK)
    rhs = period1_product(Ball.exact(t, working_bits(digits)), s, digits=digits)
    return [numeric_result(
        NAME,
        {"family": "period1", "s": s, "t": str(t), "N": n_terms},
        lhs.inflate(tail),
        rhs,
        _gf_tolerance(tolerance),
        digits,
        notes=f"truncation bound {mpmath.nstr(tail, 3)}",
    )]


# sincs: sum_k (-1)^k t^(2kn) zeta({2n}^k) = prod_{j<n} sinc(pi t e^(i pi j/n))


def sincs(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    n = int_param(params, "n", 1)
    t = fraction_param(params, "t", "1/2")
    lhs, rhs = sinc_zeta_product(Ball.exact(t, working_bits(digits)), n, digits=digits)
    return [numeric_result(
        NAME,
        {"family": "sincs", "n": n, "t": str(t)},
        lhs,
        rhs,
        _gf_tolerance(tolerance),
        digits,
    )]


# adef: sum_n z^n zeta({1bar}^n) = A(z)


_CAUCHY_RADIUS = Fraction(9, 10)


def adef(params: Dict[str, Any], digits: int, tolerance: Optional[float]) -> List[CheckResult]:
    z = fraction_param(params, "z", "3/10")
    n_terms = int_param(params, "N", 40)
    if abs(z) >= _CAUCHY_RADIUS:
        raise OutOfDomainError("adef needs |z| < 9/10", context={"z": str(z)})
    coefficients = alternating_ones(n_terms, digits=digits)
    lhs = Ball.zero()
    for n, c in enumerate(coefficients):
        lhs = lhs + c * z ** n
    # Cauchy estimate on |w| = R: |log A| <= R log 2 + zeta(2) (-log(1-R) - R)
    with mpmath.workprec(RAD_PREC):
        radius = mpf(_CAUCHY_RADIUS.numerator) / _CAUCHY_RADIUS.denominator
        bound = mpmath.exp(radius * mpmath.log(2) + mpmath.zeta(2) * (-mpmath.log(1 - radius) - radius))
        q = _upper(z) / radius
        tail = rad_mul(bound * q ** (n_terms + 1) / (1 - q), _SLACK)
    tol = _gf_tolerance(tolerance)
    rhs = a_of_z(z, digits=digits)
    params_out = {"family": "adef", "z": str(z), "N": n_terms}
    return [
        numeric_result(NAME, params_out, lhs.inflate(tail), rhs, tol, digits,
                       notes=f"truncation bound {mpmath.nstr(tail, 3)}"),
        numeric_result(NAME, {**params_out, "route": "product"}, a_of_z_product(z, digits=digits), rhs, tol, digits),
    ]


FAMILIES: Dict[str, Family] = {
    "zfact": zfact,
    "z313gf": z313gf,
    "mgf": mgf,
    "drin": drin,
    "period1": period1,
    "sincs": sincs,
    "adef": adef,
}


def run_family(family: str, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
    fn = FAMILIES.get(family)
    if fn is None:
        raise NotFoundError(f"unknown generating function family {family!r}", context={"choices": sorted(FAMILIES)})
    logger.debug("generating function %s with %s", family, params)
    return fn(params, digits, tolerance)


class GeneratingFunctionCheck(BaseCheck):
    @property
    def name(self) -> str:
        return NAME

    @property
    def description(self) -> str:
        return "truncated generating functions against closed forms: " + ", ".join(FAMILIES)

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        family = str(params.get("family", ""))
        rest = {k: v for k, v in params.items() if k != "family"}
        return run_family(family, rest, digits, tolerance)
