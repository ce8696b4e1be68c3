# app/models/arguments.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from app.core.errors import OutOfDomainError
from app.models.words import Composition


@dataclass(frozen=True)
class SignedComposition:
    """Euler-sum argument list (s_j, sigma_j) evaluated at a point x in [0, 1]."""
    parts: Tuple[int, ...]
    signs: Tuple[int, ...]
    x: Fraction = Fraction(1)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        signs = tuple(int(s) for s in self.signs)
        x = Fraction(self.x)
        if len(parts) != len(signs):
            raise OutOfDomainError("parts and signs must have the same length")
        if any(p < 1 for p in parts):
            raise OutOfDomainError("parts must be positive integers", context={"parts": list(parts)})
        if any(s not in (1, -1) for s in signs):
            raise OutOfDomainError("signs must be +1 or -1", context={"signs": list(signs)})
        if not 0 <= x <= 1:
            raise OutOfDomainError("x must lie in [0, 1]", context={"x": str(x)})
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_composition(cls, composition: Composition, x: Fraction = Fraction(1)) -> "SignedComposition":
        return cls(composition.parts, (1,) * composition.depth, x)

    @classmethod
    def from_signed_parts(cls, signed: Tuple[int, ...], x: Fraction = Fraction(1)) -> "SignedComposition":
        """Negative entries mark a barred argument: (-1, 1) is zeta(1bar, 1)."""
        if any(v == 0 for v in signed):
            raise OutOfDomainError("signed parts must be nonzero integers")
        return cls(tuple(abs(v) for v in signed), tuple(1 if v > 0 else -1 for v in signed), x)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def is_admissible(self) -> bool:
        if self.x < 1 or not self.parts:
            return True
        return not (self.parts[0] == 1 and self.signs[0] == 1)

    @property
    def composition(self) -> Composition:
        return Composition(self.parts)

    def signed_parts(self) -> Tuple[int, ...]:
        return tuple(p * s for p, s in zip(self.parts, self.signs))

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.signed_parts())

    def __str__(self) -> str:
        args = ",".join(f"{p}bar" if s < 0 else str(p) for p, s in zip(self.parts, self.signs))
        if self.x == 1:
            return f"zeta({args})"
        return f"zeta_{self.x}({args})"


@dataclass(frozen=True)
class MonomialQForm:
    """The q-difference form t^p d_q t, with eta applied `shift` times."""
    exponent: Fraction
    shift: int = 0

    def __post_init__(self):
        exponent = Fraction(self.exponent)
        if exponent < 0:
            raise OutOfDomainError("form exponents must be nonnegative", context={"exponent": str(exponent)})
        if self.shift < 0:
            raise OutOfDomainError("form shifts must be nonnegative", context={"shift": self.shift})
        object.__setattr__(self, "exponent", exponent)

    @property
    def degree(self) -> Fraction:
        """c = p + 1, the power of t in the sampled form t^p * t * (1 - q)."""
        return self.exponent + 1
