# app/services/numerics/q_integrals.py
"""Iterated Jackson q-integrals of monomial q-difference forms.

A letter with symbol `a` and shift j stands for eta^j of the form t^p d_q t,
where p is looked up in a form assignment {symbol: p}. The form is sampled as
t^c (1 - q) with c = p + 1, and eta^j multiplies it by q^(j c).
"""
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Union

import mpmath
import sympy
from mpmath import mpf

from app.core.errors import OutOfDomainError
from app.models.arguments import MonomialQForm
from app.models.ball import Ball, RAD_PREC, rad_add, rad_mul
from app.models.words import GaussianRational, NcPoly, Word
from app.services.numerics.precision import with_precision_retry, working_bits

logger = logging.getLogger(__name__)

FormAssignment = Mapping[str, Union[int, Fraction]]

DEFAULT_FORMS: Dict[str, Fraction] = {"a": Fraction(0), "b": Fraction(1)}


def _sym(value: Union[int, Fraction]) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _check_point(x: Fraction, q: Fraction) -> None:
    if not 0 < q < 1:
        raise OutOfDomainError("q must lie in (0, 1)", context={"q": str(q)})
    if x < 0:
        raise OutOfDomainError("x must be nonnegative", context={"x": str(x)})


def word_forms(word: Word, forms: FormAssignment) -> List[MonomialQForm]:
    out = []
    for letter in word:
        if letter.symbol not in forms:
            raise OutOfDomainError(
                f"no form assigned to letter {letter.symbol!r}",
                context={"assigned": sorted(forms)},
            )
        out.append(MonomialQForm(Fraction(forms[letter.symbol]), letter.shift))
    return out


def q_word_value_exact(word: Word, forms: FormAssignment, x: Fraction, q: Fraction) -> sympy.Expr:
    """(1-q)^k q^(sum j_r c_r) x^(sum c_r) prod_i 1/(1 - q^(c_i + ... + c_k))."""
    x, q = Fraction(x), Fraction(q)
    _check_point(x, q)
    sq, sx = _sym(q), _sym(x)
    letters = word_forms(word, forms)
    degrees = [_sym(f.degree) for f in letters]
    value = (1 - sq) ** len(letters)
    value *= sx ** sum(degrees, sympy.Integer(0))
    value *= sq ** sum((f.shift * c for f, c in zip(letters, degrees)), sympy.Integer(0))
    suffix = sympy.Integer(0)
    for c in reversed(degrees):
        suffix += c
        value /= 1 - sq ** suffix
    return value


def _scalar(c: GaussianRational) -> sympy.Expr:
    return _sym(c.re) + sympy.I * _sym(c.im)


def q_poly_value_exact(poly: NcPoly, forms: FormAssignment, x: Fraction, q: Fraction) -> sympy.Expr:
    total = sympy.Integer(0)
    for word, coeff in poly:
        total += _scalar(coeff) * q_word_value_exact(word, forms, x, q)
    return total


def exactly_equal(a: sympy.Expr, b: sympy.Expr) -> bool:
    difference = sympy.nsimplify(sympy.simplify(a - b))
    return difference == 0


def classical_value(word: Word, forms: FormAssignment, x: Fraction) -> sympy.Expr:
    """The q -> 1 limit: x^(sum c) prod_i 1/(c_i + ... + c_k)."""
    letters = word_forms(word, forms)
    degrees = [_sym(f.degree) for f in letters]
    value = _sym(x) ** sum(degrees, sympy.Integer(0))
    suffix = sympy.Integer(0)
    for c in reversed(degrees):
        suffix += c
        value /= suffix
    return value


def default_q_sequence(count: int) -> List[Fraction]:
    return [1 - Fraction(1, 2 ** j) for j in range(1, count + 1)]


def q_limit_check(word: Word, forms: FormAssignment, x: Fraction, qs: Sequence[Fraction]) -> List[sympy.Expr]:
    """Exact q-values along a sequence q_j -> 1 from below."""
    return [q_word_value_exact(word, forms, x, q) for q in qs]


@with_precision_retry
def q_word_value_series(
        word: Word,
        forms: FormAssignment,
        x: Fraction,
        q: Fraction,
        terms: Optional[int] = None,
        digits: int = None,
) -> Ball:
    """Truncated nested Jackson sums, evaluated level by level on the grid x q^n."""
    x, q = Fraction(x), Fraction(q)
    _check_point(x, q)
    bits = working_bits(digits)
    letters = word_forms(word, forms)
    if not letters:
        return Ball.one(bits)
    if x == 0:
        return Ball.zero(bits)
    with mpmath.workprec(RAD_PREC):
        c_min = min(float(f.degree) for f in letters)
        qf = mpf(q.numerator) / q.denominator
        if terms is None:
            terms = int(mpmath.ceil(bits * mpmath.log(2) / (c_min * -mpmath.log(qf)))) + 1
    with mpmath.workprec(bits):
        qm = mpmath.mpf(q.numerator) / q.denominator
        xm = mpmath.mpf(x.numerator) / x.denominator
        one_minus = 1 - qm
        inner = [mpf(1)] * (terms + 1)
        for form in reversed(letters):
            c = mpmath.mpf(form.degree.numerator) / form.degree.denominator
            running = mpf(0)
            level = [mpf(0)] * (terms + 1)
            for n in range(terms, -1, -1):
                running += (xm * qm ** (n + form.shift)) ** c * one_minus * inner[n]
                level[n] = running
            inner = level
        value = inner[0]
    with mpmath.workprec(RAD_PREC):
        full = []
        omitted = []
        for form in letters:
            c = mpf(form.degree.numerator) / form.degree.denominator
            whole = (mpf(x.numerator) / x.denominator) ** c * qf ** (form.shift * c) * (1 - qf) / (1 - qf ** c)
            full.append(whole)
            omitted.append(whole * qf ** ((terms + 1) * c))
        tail = mpf(0)
        for r in range(len(letters)):
            product = omitted[r]
            for s, whole in enumerate(full):
                if s != r:
                    product *= whole
            tail += product
        rounding = mpmath.ldexp(8 * (terms + 1) * len(letters), -bits) * abs(value)
    return Ball(value, rad_add(rad_mul(tail, 1 + mpmath.ldexp(1, -40)), rounding), bits)
