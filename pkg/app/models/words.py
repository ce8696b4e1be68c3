# app/models/words.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from app.core.errors import OutOfDomainError

Scalar = Union[int, Fraction, "GaussianRational"]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number re + im*i with rational parts."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def of(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise TypeError(f"Cannot convert {type(value).__name__} to GaussianRational")

    @classmethod
    def i(cls) -> "GaussianRational":
        return cls(Fraction(0), Fraction(1))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) - self

    def __mul__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.of(other) / self

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GaussianRational(Fraction(1)) / (self ** -n)
        result = GaussianRational(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}i"


@dataclass(frozen=True, order=True)
class Letter:
    """A letter of the word alphabet: a symbol plus the power of eta applied to it."""
    symbol: str
    shift: int = 0

    def __post_init__(self):
        if len(self.symbol) != 1 or not ("a" <= self.symbol <= "z"):
            raise OutOfDomainError(
                f"letter symbol must be a single lowercase character, got {self.symbol!r}"
            )
        if self.shift < 0:
            raise OutOfDomainError("letter shifts must be nonnegative", context={"shift": self.shift})

    @property
    def is_classical(self) -> bool:
        return self.symbol in ("a", "b") and self.shift == 0

    def shifted(self, j: int) -> "Letter":
        return Letter(self.symbol, self.shift + j)

    def __str__(self) -> str:
        return self.symbol if self.shift == 0 else f"{self.symbol}[{self.shift}]"


A = Letter("a")
B = Letter("b")


@dataclass(frozen=True)
class Word:
    """Finite sequence of letters; the empty word is the monoid identity."""
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def of(cls, symbols: str) -> "Word":
        """Word from a plain run of unshifted symbols, e.g. ``Word.of("aabb")``."""
        return cls(tuple(Letter(c) for c in symbols))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __mul__(self, n: int) -> "Word":
        return Word(self.letters * n)

    @property
    def sort_key(self) -> Tuple[int, Tuple[Letter, ...]]:
        return len(self.letters), self.letters

    @property
    def is_classical(self) -> bool:
        return all(letter.is_classical for letter in self.letters)

    @property
    def is_admissible(self) -> bool:
        return (
            len(self.letters) > 0
            and self.is_classical
            and self.letters[0] == A
            and self.letters[-1] == B
        )

    def shifted(self, j: int) -> "Word":
        return Word(tuple(letter.shifted(j) for letter in self.letters))

    def reversed(self) -> "Word":
        return Word(self.letters[::-1])

    def swapped(self) -> "Word":
        """Exchange a and b letter by letter (classical words only)."""
        return Word(tuple(B if letter == A else A for letter in self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(str(letter) for letter in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY_WORD = Word()


class NcPoly:
    """Finitely supported map Word -> GaussianRational, immutable once built."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Word, Scalar]] = None):
        cleaned: Dict[Word, GaussianRational] = {}
        for word, coeff in (terms or {}).items():
            c = GaussianRational.of(coeff)
            if not c.is_zero():
                cleaned[word] = c
        self._terms = {w: cleaned[w] for w in sorted(cleaned, key=lambda w: w.sort_key)}

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls()

    @classmethod
    def one(cls) -> "NcPoly":
        return cls({EMPTY_WORD: 1})

    @classmethod
    def from_word(cls, word: Word, coeff: Scalar = 1) -> "NcPoly":
        return cls({word: coeff})

    def terms(self) -> List[Tuple[Word, GaussianRational]]:
        return list(self._terms.items())

    def words(self) -> List[Word]:
        return list(self._terms)

    def coefficient(self, word: Word) -> GaussianRational:
        return self._terms.get(word, GaussianRational())

    def is_zero(self) -> bool:
        return not self._terms

    def mass(self) -> GaussianRational:
        """Sum of all coefficients."""
        total = GaussianRational()
        for c in self._terms.values():
            total = total + c
        return total

    def map_words(self, fn: Callable[[Word], Word]) -> "NcPoly":
        out: Dict[Word, GaussianRational] = {}
        for word, c in self._terms.items():
            image = fn(word)
            out[image] = out.get(image, GaussianRational()) + c
        return NcPoly(out)

    def scale(self, c: Scalar) -> "NcPoly":
        g = GaussianRational.of(c)
        return NcPoly({w: g * v for w, v in self._terms.items()})

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Word, GaussianRational]]:
        return iter(self._terms.items())

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, GaussianRational()) + c
        return NcPoly(out)

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + other.scale(-1)

    def __neg__(self) -> "NcPoly":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            out: Dict[Word, GaussianRational] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, GaussianRational()) + c1 * c2
            return NcPoly(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (word, c) in enumerate(self._terms.items()):
            if c.is_real():
                negative = c.re < 0
                mag = -c.re if negative else c.re
                body = str(word) if mag == 1 else f"{mag}*{word}"
            else:
                negative = False
                body = f"({c})*{word}"
            if i == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"NcPoly({str(self)!r})"


@dataclass(frozen=True)
class Composition:
    """Finite sequence of positive integers s_1..s_k."""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise OutOfDomainError("composition parts must be positive integers", context={"parts": list(parts)})
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Composition":
        return cls(tuple(parts))

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def is_admissible(self) -> bool:
        return not self.parts or self.parts[0] >= 2

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Composition(self.parts[item])
        return self.parts[item]

    def __add__(self, other: "Composition") -> "Composition":
        return Composition(self.parts + other.parts)

    def to_text(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __str__(self) -> str:
        return f"({self.to_text()})"

    def __repr__(self) -> str:
        return f"Composition{str(self)}"
