# app/models/symbolic.py
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from app.core.errors import OutOfDomainError

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class ZetaSymbol:
    """zeta(arg), or the formal zeta(arg * s) when `formal` is set."""
    formal: bool
    arg: int

    @classmethod
    def of(cls, k: int) -> "ZetaSymbol":
        if k < 2:
            raise OutOfDomainError("zeta symbols need an argument >= 2", context={"arg": k})
        return cls(False, k)

    @classmethod
    def multiple_of_s(cls, j: int) -> "ZetaSymbol":
        if j < 1:
            raise OutOfDomainError("formal zeta symbols need a positive multiple of s", context={"arg": j})
        return cls(True, j)

    def instantiate(self, s: int) -> "ZetaSymbol":
        return ZetaSymbol.of(self.arg * s) if self.formal else self

    def __str__(self) -> str:
        if not self.formal:
            return f"z{self.arg}"
        return "z[s]" if self.arg == 1 else f"z[{self.arg}s]"


Monomial = Tuple[Tuple[ZetaSymbol, int], ...]
ONE: Monomial = ()


def monomial_weight(m: Monomial) -> int:
    return sum(sym.arg * e for sym, e in m)


def _monomial_key(m: Monomial):
    return monomial_weight(m), m


def _monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    powers: Dict[ZetaSymbol, int] = dict(a)
    for sym, e in b:
        powers[sym] = powers.get(sym, 0) + e
    return tuple(sorted(powers.items()))


def _monomial_str(m: Monomial) -> str:
    return " ".join(str(sym) if e == 1 else f"{sym}^{e}" for sym, e in m)


class ZetaPolynomial:
    """Polynomial with rational coefficients in atomic zeta symbols."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None):
        cleaned = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        self._terms: Dict[Monomial, Fraction] = {
            m: cleaned[m] for m in sorted(cleaned, key=_monomial_key)
        }

    @classmethod
    def constant(cls, c: Rational) -> "ZetaPolynomial":
        return cls({ONE: c})

    @classmethod
    def zeta(cls, k: int, c: Rational = 1) -> "ZetaPolynomial":
        return cls({((ZetaSymbol.of(k), 1),): c})

    @classmethod
    def formal_zeta(cls, j: int, c: Rational = 1) -> "ZetaPolynomial":
        return cls({((ZetaSymbol.multiple_of_s(j), 1),): c})

    @classmethod
    def zeta_product(cls, args: List[int], c: Rational = 1) -> "ZetaPolynomial":
        result = cls.constant(c)
        for k in args:
            result = result * cls.zeta(k)
        return result

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        return list(self._terms.items())

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(sorted(monomial)), Fraction(0))

    def symbols(self) -> List[ZetaSymbol]:
        return sorted({sym for m in self._terms for sym, _ in m})

    def weights(self) -> List[int]:
        return sorted({monomial_weight(m) for m in self._terms})

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self, weight: Optional[int] = None) -> bool:
        ws = self.weights()
        if weight is None:
            return len(ws) <= 1
        return ws == [weight] or not ws

    def instantiate(self, s: int) -> "ZetaPolynomial":
        """Replace every formal zeta(j s) with the concrete zeta(j * s)."""
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            image: Monomial = ONE
            for sym, e in m:
                image = _monomial_mul(image, ((sym.instantiate(s), e),))
            out[image] = out.get(image, Fraction(0)) + c
        return ZetaPolynomial(out)

    def scale(self, c: Rational) -> "ZetaPolynomial":
        return ZetaPolynomial({m: v * c for m, v in self._terms.items()})

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other) -> "ZetaPolynomial":
        if not isinstance(other, ZetaPolynomial):
            other = ZetaPolynomial.constant(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ZetaPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "ZetaPolynomial":
        return self.scale(-1)

    def __sub__(self, other) -> "ZetaPolynomial":
        if not isinstance(other, ZetaPolynomial):
            other = ZetaPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "ZetaPolynomial":
        return ZetaPolynomial.constant(other) - self

    def __mul__(self, other) -> "ZetaPolynomial":
        if not isinstance(other, ZetaPolynomial):
            return self.scale(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _monomial_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return ZetaPolynomial(out)

    def __rmul__(self, other) -> "ZetaPolynomial":
        return self.scale(other)

    def __pow__(self, n: int) -> "ZetaPolynomial":
        if n < 0:
            raise OutOfDomainError("negative powers are not polynomials")
        result = ZetaPolynomial.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ZetaPolynomial.constant(other)
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self._terms.items()):
            mag = abs(c)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = _monomial_str(m)
            else:
                body = f"{mag} * {_monomial_str(m)}"
            if i == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"ZetaPolynomial({str(self)!r})"


@dataclass(frozen=True)
class ExactPiMultiple:
    """coefficient * pi^power."""
    coefficient: Fraction
    power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.power < 0:
            raise OutOfDomainError("pi powers must be nonnegative")
        if self.coefficient == 0 and self.power:
            object.__setattr__(self, "power", 0)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    def scale(self, c: Rational) -> "ExactPiMultiple":
        return ExactPiMultiple(self.coefficient * c, self.power)

    def __mul__(self, other):
        if isinstance(other, ExactPiMultiple):
            return ExactPiMultiple(self.coefficient * other.coefficient, self.power + other.power)
        return self.scale(other)

    __rmul__ = __mul__

    def __add__(self, other: "ExactPiMultiple") -> "ExactPiMultiple":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.power != other.power:
            raise OutOfDomainError("cannot add pi multiples of different powers")
        return ExactPiMultiple(self.coefficient + other.coefficient, self.power)

    def __pow__(self, n: int) -> "ExactPiMultiple":
        return ExactPiMultiple(self.coefficient ** n, self.power * n)

    def __str__(self) -> str:
        if self.power == 0 or self.is_zero:
            return str(self.coefficient)
        pi = "pi" if self.power == 1 else f"pi^{self.power}"
        return pi if self.coefficient == 1 else f"{self.coefficient} * {pi}"


class BivariateSeries:
    """Truncated power series in x, y with ZetaPolynomial coefficients.

    Only monomials x^i y^j with i + j <= order are kept.
    """

    def __init__(self, order: int, coefficients: Optional[Mapping[Tuple[int, int], ZetaPolynomial]] = None):
        self.order = order
        self.coefficients: Dict[Tuple[int, int], ZetaPolynomial] = {
            (i, j): c
            for (i, j), c in (coefficients or {}).items()
            if i + j <= order and not c.is_zero()
        }

    def coefficient(self, i: int, j: int) -> ZetaPolynomial:
        return self.coefficients.get((i, j), ZetaPolynomial())

    def min_degree(self) -> Optional[int]:
        return min((i + j for i, j in self.coefficients), default=None)

    def scale(self, c) -> "BivariateSeries":
        return BivariateSeries(self.order, {k: v * c for k, v in self.coefficients.items()})

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, ZetaPolynomial()) + v
        return BivariateSeries(min(self.order, other.order), out)

    def __neg__(self) -> "BivariateSeries":
        return self.scale(-1)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + (-other)

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        out: Dict[Tuple[int, int], ZetaPolynomial] = {}
        for (i1, j1), c1 in self.coefficients.items():
            for (i2, j2), c2 in other.coefficients.items():
                if i1 + i2 + j1 + j2 > order:
                    continue
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, ZetaPolynomial()) + c1 * c2
        return BivariateSeries(order, out)

    def exp(self) -> "BivariateSeries":
        """exp of a series without constant term."""
        if (0, 0) in self.coefficients:
            raise OutOfDomainError("exp needs a series with zero constant term")
        low = self.min_degree()
        result = BivariateSeries(self.order, {(0, 0): ZetaPolynomial.constant(1)})
        if low is None:
            return result
        power = BivariateSeries(self.order, {(0, 0): ZetaPolynomial.constant(1)})
        for n in range(1, self.order // low + 1):
            power = power * self
            result = result + power.scale(Fraction(1, factorial(n)))
        return result
