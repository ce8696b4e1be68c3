# app/services/suite/checks/results.py
"""Parameter coercion and CheckResult builders shared by every check."""
import sys
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Union

import mpmath

from app.core.errors import ParseError
from app.models.ball import Ball, ComplexBall
from app.models.check import CheckResult
from app.models.words import Composition, Word
from app.services.words.parsing import parse_composition, parse_rational, parse_word

Enclosure = Union[Ball, ComplexBall]

# Params


def int_param(params: Mapping[str, Any], key: str, default: Optional[int] = None) -> int:
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing parameter {key!r}")
    try:
        return int(str(value).strip())
    except ValueError as e:
        raise ParseError(f"parameter {key!r} must be an integer, got {value!r}", cause=e)


def fraction_param(params: Mapping[str, Any], key: str, default: Union[Fraction, str, None] = None) -> Fraction:
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing parameter {key!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return parse_rational(str(value))


def fraction_list_param(params: Mapping[str, Any], key: str, default: Optional[str] = None) -> List[Fraction]:
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing parameter {key!r}")
    if isinstance(value, (list, tuple)):
        return [Fraction(v) if isinstance(v, (int, Fraction)) else parse_rational(str(v)) for v in value]
    return [parse_rational(piece) for piece in str(value).split(",") if piece.strip()]


def composition_param(params: Mapping[str, Any], key: str, default: Optional[str] = None) -> Composition:
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing parameter {key!r}")
    if isinstance(value, (list, tuple)):
        value = ",".join(str(v) for v in value)
    return parse_composition(str(value))


def word_param(params: Mapping[str, Any], key: str, default: Optional[str] = None) -> Word:
    value = params.get(key, default)
    if value is None:
        raise ParseError(f"missing parameter {key!r}")
    return parse_word(str(value))


def bool_param(params: Mapping[str, Any], key: str, default: bool = False) -> bool:
    value = params.get(key, default)
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ParseError(f"parameter {key!r} must be a boolean, got {value!r}")


def forms_param(params: Mapping[str, Any], key: str = "forms", default: str = "a=0,b=1") -> Dict[str, Fraction]:
    """`a=0,b=1` -> {"a": 0, "b": 1}."""
    value = params.get(key, default)
    if isinstance(value, Mapping):
        return {k: Fraction(v) for k, v in value.items()}
    forms: Dict[str, Fraction] = {}
    for piece in str(value).split(","):
        symbol, sep, exponent = piece.partition("=")
        if not sep or len(symbol.strip()) != 1:
            raise ParseError(f"form assignments look like a=0,b=1; got {piece!r}")
        forms[symbol.strip()] = parse_rational(exponent)
    return forms


def text(value: Any) -> str:
    if isinstance(value, Composition):
        return value.to_text()
    return str(value)


# Results


def _as_complex(value: Enclosure) -> ComplexBall:
    return value if isinstance(value, ComplexBall) else ComplexBall.from_ball(value)


def numeric_result(
        name: str,
        params: Dict[str, Any],
        lhs: Enclosure,
        rhs: Enclosure,
        tolerance: float,
        digits: int,
        notes: Optional[str] = None,
) -> CheckResult:
    """Residual |lhs.mid - rhs.mid| + lhs.rad + rhs.rad, so radii never mask a failure."""
    if isinstance(lhs, Ball) and isinstance(rhs, Ball):
        residual = lhs.residual(rhs)
    else:
        residual = _as_complex(lhs).residual(_as_complex(rhs))
    return CheckResult(
        name=name,
        params=params,
        lhs=lhs.to_string(digits),
        rhs=rhs.to_string(digits),
        # clamped so reports stay valid JSON
        residual=min(float(mpmath.mpf(residual)), sys.float_info.max),
        tolerance=tolerance,
        passed=bool(residual <= tolerance),
        rigorous=lhs.rigorous and rhs.rigorous,
        notes=notes,
    )


def exact_result(
        name: str,
        params: Dict[str, Any],
        lhs: Any,
        rhs: Any,
        equal: bool,
        notes: Optional[str] = None,
) -> CheckResult:
    return CheckResult(
        name=name,
        params=params,
        lhs=str(lhs),
        rhs=str(rhs),
        residual=0.0 if equal else 1.0,
        tolerance=0.0,
        passed=equal,
        notes=notes,
    )


def error_result(name: str, params: Dict[str, Any], error: Exception) -> CheckResult:
    return CheckResult(
        name=name,
        params=params,
        lhs="",
        rhs="",
        residual=1.0,
        tolerance=0.0,
        passed=False,
        notes=f"error: {error}",
    )
