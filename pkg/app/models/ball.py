# app/models/ball.py
"""Midpoint-radius enclosures over mpmath.

Radii are kept at 53 bits with upward rounding; midpoints carry the working
precision of the computation that produced them. Every operation returns a
ball guaranteed to contain the exact result when its inputs do.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Union

import mpmath
from mpmath import mpf

from app.core.errors import EnclosureError, ParseError

RAD_PREC = 53
ZERO = mpf(0)

Real = Union[int, Fraction, mpf, "Ball"]


def rad_add(*terms) -> mpf:
    total = ZERO
    for t in terms:
        total = mpmath.fadd(total, t, prec=RAD_PREC, rounding="c")
    return total


def rad_mul(a, b) -> mpf:
    return mpmath.fmul(a, b, prec=RAD_PREC, rounding="c")


def rad_div(a, b) -> mpf:
    return mpmath.fdiv(a, b, prec=RAD_PREC, rounding="c")


def rad_mul_down(a, b) -> mpf:
    return mpmath.fmul(a, b, prec=RAD_PREC, rounding="f")


def rad_sqrt(a) -> mpf:
    with mpmath.workprec(RAD_PREC):
        root = mpmath.sqrt(a)
    return rad_mul(root, 1 + mpmath.ldexp(1, -48))


def ulp_bound(x, prec: int, ulps: int = 1) -> mpf:
    """Upper bound for `ulps` roundings of a value near x at `prec` bits."""
    if not x:
        return ZERO
    return rad_mul(mpmath.ldexp(exact_abs(x), 1 - prec), ulps)


def to_fraction(x: mpf) -> Fraction:
    """Exact rational value of a finite mpf."""
    if not mpmath.isfinite(x):
        raise EnclosureError("non-finite value has no exact rational form")
    sign, man, exp, _ = x._mpf_
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def fraction_to_mpf(value: Fraction, prec: int, rounding: str = "n") -> mpf:
    return mpmath.fdiv(value.numerator, value.denominator, prec=prec, rounding=rounding)


def mpf_upper(value) -> mpf:
    """`value` (int, Fraction or mpf) rounded up to radius precision."""
    if isinstance(value, Fraction):
        return fraction_to_mpf(value, RAD_PREC, "c")
    return mpmath.fadd(value, 0, prec=RAD_PREC, rounding="c")


def exact_abs(x: mpf) -> mpf:
    return mpmath.fneg(x, exact=True) if x < 0 else x


def format_upper(r: mpf, sig: int = 2) -> str:
    """Decimal string that is >= r, with `sig` significant digits."""
    if not r:
        return "0"
    if not mpmath.isfinite(r):
        return "inf"
    exact = to_fraction(r)
    with mpmath.workprec(RAD_PREC):
        e = int(mpmath.floor(mpmath.log10(r)))
    exp = e - sig + 1
    m = math.ceil(exact / Fraction(10) ** exp)
    while m >= 10 ** sig:
        m = -(-m // 10)
        exp += 1
    digits = str(m)
    mantissa = digits[0] + ("." + digits[1:] if len(digits) > 1 else "")
    mantissa = mantissa.rstrip("0").rstrip(".") if "." in mantissa else mantissa
    return f"{mantissa}e{exp + len(digits) - 1}"


def parse_upper(text: str) -> mpf:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"invalid radius {text!r}", cause=e)
    if value < 0:
        raise ParseError(f"negative radius {text!r}")
    return fraction_to_mpf(value, RAD_PREC, rounding="c")


@dataclass(frozen=True)
class Ball:
    """Real enclosure [mid - rad, mid + rad]."""
    mid: mpf
    rad: mpf = ZERO
    prec: int = 53
    rigorous: bool = True

    def __post_init__(self):
        if not isinstance(self.mid, mpf):
            object.__setattr__(self, "mid", _exact_or_rounded(self.mid, self.prec))
        if not isinstance(self.rad, mpf):
            object.__setattr__(self, "rad", parse_upper(str(self.rad)))
        if self.rad < 0:
            raise EnclosureError("ball radius must be nonnegative")

    @classmethod
    def exact(cls, value: Union[int, Fraction, mpf], prec: int = 53) -> "Ball":
        """Ball around a rational or dyadic value; radius covers the rounding."""
        if isinstance(value, mpf):
            return cls(value, ZERO, prec)
        q = Fraction(value)
        mid = fraction_to_mpf(q, prec)
        rad = ZERO if to_fraction(mid) == q else ulp_bound(mid, prec)
        return cls(mid, rad, prec)

    @classmethod
    def zero(cls, prec: int = 53) -> "Ball":
        return cls(ZERO, ZERO, prec)

    @classmethod
    def one(cls, prec: int = 53) -> "Ball":
        return cls(mpf(1), ZERO, prec)

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction, mpf)):
            return Ball.exact(other, self.prec)
        raise TypeError(f"Cannot combine Ball with {type(other).__name__}")

    @property
    def is_finite(self) -> bool:
        return bool(mpmath.isfinite(self.mid) and mpmath.isfinite(self.rad))

    def lower(self) -> mpf:
        return mpmath.fsub(self.mid, self.rad, prec=max(self.prec, RAD_PREC), rounding="f")

    def upper(self) -> mpf:
        return mpmath.fadd(self.mid, self.rad, prec=max(self.prec, RAD_PREC), rounding="c")

    def abs_upper(self) -> mpf:
        return rad_add(exact_abs(self.mid), self.rad)

    def abs_lower(self) -> mpf:
        low = mpmath.fsub(exact_abs(self.mid), self.rad, prec=RAD_PREC, rounding="f")
        return low if low > 0 else ZERO

    def contains_zero(self) -> bool:
        return exact_abs(self.mid) <= self.rad

    def inflate(self, extra) -> "Ball":
        return Ball(self.mid, rad_add(self.rad, extra), self.prec, self.rigorous)

    def with_rigorous(self, rigorous: bool) -> "Ball":
        return Ball(self.mid, self.rad, self.prec, rigorous)

    def __neg__(self) -> "Ball":
        return Ball(mpmath.fneg(self.mid, exact=True), self.rad, self.prec, self.rigorous)

    def __add__(self, other) -> "Ball":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        mid = mpmath.fadd(self.mid, o.mid, prec=p)
        rad = rad_add(self.rad, o.rad, ulp_bound(mid, p))
        return Ball(mid, rad, p, self.rigorous and o.rigorous)

    __radd__ = __add__

    def __sub__(self, other) -> "Ball":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Ball":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Ball":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        mid = mpmath.fmul(self.mid, o.mid, prec=p)
        rad = rad_add(
            rad_mul(exact_abs(self.mid), o.rad),
            rad_mul(exact_abs(o.mid), self.rad),
            rad_mul(self.rad, o.rad),
            ulp_bound(mid, p),
        )
        return Ball(mid, rad, p, self.rigorous and o.rigorous)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Ball":
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        denom_low = o.abs_lower()
        if not denom_low:
            raise EnclosureError("division by a ball containing zero")
        mid = mpmath.fdiv(self.mid, o.mid, prec=p)
        num = rad_add(rad_mul(self.rad, exact_abs(o.mid)), rad_mul(exact_abs(self.mid), o.rad))
        rad = rad_add(rad_div(num, rad_mul_down(exact_abs(o.mid), denom_low)), ulp_bound(mid, p))
        return Ball(mid, rad, p, self.rigorous and o.rigorous)

    def __rtruediv__(self, other) -> "Ball":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "Ball":
        if n < 0:
            return Ball.one(self.prec) / (self ** -n)
        result = Ball.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exp(self) -> "Ball":
        with mpmath.workprec(self.prec):
            mid = mpmath.exp(self.mid)
        with mpmath.workprec(RAD_PREC):
            growth = mpmath.expm1(self.rad)
        scale = rad_mul(exact_abs(mid), 1 + mpmath.ldexp(1, -40))
        rad = rad_add(rad_mul(scale, rad_mul(growth, 1 + mpmath.ldexp(1, -40))), ulp_bound(mid, self.prec, 4))
        return Ball(mid, rad, self.prec, self.rigorous)

    def log(self) -> "Ball":
        low = self.lower()
        if low <= 0:
            raise EnclosureError("logarithm of a ball that is not strictly positive")
        with mpmath.workprec(self.prec):
            mid = mpmath.log(self.mid)
        rad = rad_add(rad_div(self.rad, mpmath.fsub(self.mid, self.rad, prec=RAD_PREC, rounding="f")),
                      ulp_bound(mid, self.prec, 4))
        return Ball(mid, rad, self.prec, self.rigorous)

    def contains(self, value: Real) -> bool:
        if isinstance(value, Ball):
            gap = abs(to_fraction(value.mid) - to_fraction(self.mid))
            return gap + to_fraction(value.rad) <= to_fraction(self.rad)
        v = to_fraction(value) if isinstance(value, mpf) else Fraction(value)
        return abs(v - to_fraction(self.mid)) <= to_fraction(self.rad)

    def overlaps(self, other: "Ball") -> bool:
        gap = abs(to_fraction(self.mid) - to_fraction(other.mid))
        return gap <= to_fraction(self.rad) + to_fraction(other.rad)

    def residual(self, other: Real) -> mpf:
        """|mid - other.mid| + both radii, rounded up."""
        o = self._coerce(other)
        gap = fraction_to_mpf(abs(to_fraction(self.mid) - to_fraction(o.mid)), RAD_PREC, "c")
        return rad_add(gap, self.rad, o.rad)

    def to_string(self, digits: int) -> str:
        if not self.is_finite:
            return "nan ± inf"
        text = mpmath.nstr(self.mid, max(digits, 1))
        printed = Fraction(text)
        err = fraction_to_mpf(abs(printed - to_fraction(self.mid)), RAD_PREC, "c")
        return f"{text} ± {format_upper(rad_add(self.rad, err))}"

    def __str__(self) -> str:
        return self.to_string(mpmath.libmp.prec_to_dps(self.prec))

    def to_json(self) -> Dict[str, Any]:
        return {
            "mid": mpmath.nstr(self.mid, mpmath.libmp.prec_to_dps(self.prec) + 3, strip_zeros=True),
            "rad": format_upper(self.rad, 3),
            "prec": self.prec,
            "rigorous": self.rigorous,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Ball":
        prec = int(data.get("prec", 53))
        try:
            mid = fraction_to_mpf(Fraction(str(data["mid"])), prec)
        except (KeyError, ValueError) as e:
            raise ParseError("invalid ball midpoint", cause=e)
        return cls(mid, parse_upper(str(data.get("rad", "0"))), prec, bool(data.get("rigorous", True)))


def _exact_or_rounded(value, prec: int) -> mpf:
    if isinstance(value, str):
        value = Fraction(value)
    return fraction_to_mpf(Fraction(value), prec)


ComplexLike = Union[int, Fraction, mpf, Ball, "ComplexBall"]


@dataclass(frozen=True)
class ComplexBall:
    """Componentwise enclosure re + im*i."""
    re: Ball
    im: Ball

    @classmethod
    def exact(cls, re: Union[int, Fraction, mpf] = 0, im: Union[int, Fraction, mpf] = 0, prec: int = 53) -> "ComplexBall":
        return cls(Ball.exact(re, prec), Ball.exact(im, prec))

    @classmethod
    def from_ball(cls, value: Ball) -> "ComplexBall":
        return cls(value, Ball.zero(value.prec))

    @classmethod
    def from_mpc(cls, value, rad, prec: int, rigorous: bool = True) -> "ComplexBall":
        """Ball of radius `rad` (in each component) around an mpc midpoint."""
        value = mpmath.mpmathify(value) if not isinstance(value, (mpmath.mpc, mpf)) else value
        re = value.real if isinstance(value, mpmath.mpc) else value
        im = value.imag if isinstance(value, mpmath.mpc) else ZERO
        r = rad_add(rad)
        return cls(Ball(re, r, prec, rigorous), Ball(im, r, prec, rigorous))

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    @property
    def rigorous(self) -> bool:
        return self.re.rigorous and self.im.rigorous

    @property
    def is_finite(self) -> bool:
        return self.re.is_finite and self.im.is_finite

    @property
    def is_real(self) -> bool:
        return not self.im.mid and not self.im.rad

    @property
    def mid(self) -> mpmath.mpc:
        with mpmath.workprec(self.prec):
            return mpmath.mpc(self.re.mid, self.im.mid)

    def rad_upper(self) -> mpf:
        return rad_add(self.re.rad, self.im.rad)

    def abs_upper(self) -> mpf:
        a = self.re.abs_upper()
        b = self.im.abs_upper()
        return rad_sqrt(rad_add(rad_mul(a, a), rad_mul(b, b)))

    def abs_mid(self) -> mpf:
        with mpmath.workprec(RAD_PREC):
            return mpmath.hypot(self.re.mid, self.im.mid)

    def inflate(self, extra) -> "ComplexBall":
        return ComplexBall(self.re.inflate(extra), self.im.inflate(extra))

    def with_rigorous(self, rigorous: bool) -> "ComplexBall":
        return ComplexBall(self.re.with_rigorous(rigorous), self.im.with_rigorous(rigorous))

    def _coerce(self, other) -> "ComplexBall":
        if isinstance(other, ComplexBall):
            return other
        if isinstance(other, Ball):
            return ComplexBall.from_ball(other)
        if isinstance(other, (int, Fraction, mpf)):
            return ComplexBall.exact(other, 0, self.prec)
        raise TypeError(f"Cannot combine ComplexBall with {type(other).__name__}")

    def conjugate(self) -> "ComplexBall":
        return ComplexBall(self.re, -self.im)

    def times_i(self) -> "ComplexBall":
        return ComplexBall(-self.im, self.re)

    def __neg__(self) -> "ComplexBall":
        return ComplexBall(-self.re, -self.im)

    def __add__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        return ComplexBall(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        return ComplexBall(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexBall":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        if o.is_real:
            return ComplexBall(self.re * o.re, self.im * o.re)
        return ComplexBall(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexBall":
        o = self._coerce(other)
        if o.is_real:
            return ComplexBall(self.re / o.re, self.im / o.re)
        norm = o.re * o.re + o.im * o.im
        num = self * o.conjugate()
        return ComplexBall(num.re / norm, num.im / norm)

    def __rtruediv__(self, other) -> "ComplexBall":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "ComplexBall":
        if n < 0:
            return ComplexBall.exact(1, 0, self.prec) / (self ** -n)
        result = ComplexBall.exact(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exp(self) -> "ComplexBall":
        p = self.prec
        with mpmath.workprec(p):
            mid = mpmath.exp(self.mid)
        with mpmath.workprec(RAD_PREC):
            modulus = mpmath.exp(self.re.mid)
            growth = mpmath.expm1(self.rad_upper())
        modulus = rad_mul(modulus, 1 + mpmath.ldexp(1, -40))
        rad = rad_add(rad_mul(modulus, rad_mul(growth, 1 + mpmath.ldexp(1, -40))), ulp_bound(modulus, p, 8))
        return ComplexBall.from_mpc(mid, rad, p, self.rigorous)

    def contains(self, value) -> bool:
        if isinstance(value, (int, Fraction)):
            return self.re.contains(value) and self.im.contains(0)
        value = mpmath.mpmathify(value)
        if isinstance(value, mpmath.mpc):
            return self.re.contains(value.real) and self.im.contains(value.imag)
        return self.re.contains(value) and self.im.contains(ZERO)

    def overlaps(self, other: "ComplexBall") -> bool:
        o = self._coerce(other)
        return self.re.overlaps(o.re) and self.im.overlaps(o.im)

    def residual(self, other) -> mpf:
        """Upper bound on the distance between the two enclosures' far edges."""
        o = self._coerce(other)
        dr = self.re.residual(o.re)
        di = self.im.residual(o.im)
        return rad_sqrt(rad_add(rad_mul(dr, dr), rad_mul(di, di)))

    def to_string(self, digits: int) -> str:
        if self.is_real:
            return self.re.to_string(digits)
        return f"({self.re.to_string(digits)}) + ({self.im.to_string(digits)})i"

    def __str__(self) -> str:
        return self.to_string(mpmath.libmp.prec_to_dps(self.prec))

    def to_json(self) -> Dict[str, Any]:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ComplexBall":
        return cls(Ball.from_json(data["re"]), Ball.from_json(data["im"]))
