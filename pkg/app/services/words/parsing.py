# app/services/words/parsing.py
"""Text formats for words, compositions and exact numbers.

Words are runs of lowercase letters, each optionally followed by ``[k]`` for
a shifted letter; ``1`` (or the empty string) is the empty word. Compositions
are comma-separated positive integers, optionally in parentheses; a negative
entry marks a barred (alternating) argument.
"""
import re
from fractions import Fraction
from typing import List, Tuple

from app.core.errors import ParseError
from app.models.arguments import SignedComposition
from app.models.words import Composition, Letter, NcPoly, Word

_INT = re.compile(r"\s*([+-]?\d+)\s*")


def parse_word(text: str) -> Word:
    stripped = text.strip()
    if stripped in ("", "1"):
        return Word()
    letters: List[Letter] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if not ("a" <= ch <= "z"):
            raise ParseError(f"unexpected character {ch!r} in word", position=i)
        shift = 0
        j = i + 1
        if j < len(text) and text[j] == "[":
            close = text.find("]", j)
            if close < 0:
                raise ParseError("unterminated shift bracket", position=j)
            body = text[j + 1:close].strip()
            if not body.isdigit():
                raise ParseError(f"shift must be a nonnegative integer, got {body!r}", position=j + 1)
            shift = int(body)
            j = close + 1
        letters.append(Letter(ch, shift))
        i = j
    return Word(tuple(letters))


def _split_integers(text: str) -> List[Tuple[int, int]]:
    """(value, position) pairs of a comma-separated integer list."""
    body = text.strip()
    offset = text.find(body) if body else 0
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
        offset += 1
    if not body.strip():
        return []
    out = []
    pos = offset
    for piece in body.split(","):
        m = _INT.fullmatch(piece)
        if not m:
            raise ParseError(f"expected an integer, got {piece.strip()!r}", position=pos)
        out.append((int(m.group(1)), pos))
        pos += len(piece) + 1
    return out


def parse_composition(text: str) -> Composition:
    parts = []
    for value, pos in _split_integers(text):
        if value < 1:
            raise ParseError(f"composition parts must be positive, got {value}", position=pos)
        parts.append(value)
    return Composition(tuple(parts))


def parse_signed_composition(text: str, x: Fraction = Fraction(1)) -> SignedComposition:
    parts = []
    for value, pos in _split_integers(text):
        if value == 0:
            raise ParseError("arguments must be nonzero", position=pos)
        parts.append(value)
    return SignedComposition.from_signed_parts(tuple(parts), x)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"invalid rational number {text!r}", position=0, cause=e)


def parse_complex(text: str) -> Tuple[Fraction, Fraction]:
    """Parse ``re``, ``im i``, or ``re+im i`` with rational parts, e.g. ``1/2-1/3i``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty complex number", position=0)
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    terms = []
    start = 0
    for k in range(1, len(s) + 1):
        if k == len(s) or (s[k] in "+-" and s[k - 1] not in "eE/"):
            terms.append((s[start:k], start))
            start = k
    re_part = Fraction(0)
    im_part = Fraction(0)
    for term, pos in terms:
        if term.endswith("i") or term.endswith("j"):
            coeff = term[:-1]
            if coeff in ("", "+", "-"):
                coeff += "1"
            try:
                im_part += Fraction(coeff)
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"invalid imaginary part {term!r}", position=pos, cause=e)
        else:
            try:
                re_part += Fraction(term)
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"invalid real part {term!r}", position=pos, cause=e)
    return re_part, im_part


def format_word(word: Word) -> str:
    """Inverse of parse_word."""
    return str(word)


def format_poly(poly: NcPoly) -> str:
    """Terms in canonical word order, ``2*ab + ba[1]``; ``0`` for the zero polynomial."""
    return str(poly)
