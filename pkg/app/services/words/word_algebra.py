# app/services/words/word_algebra.py
import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Tuple

from app.core.errors import (
    BadArityError,
    NotAdmissibleError,
    NotConvertibleError,
    OutOfDomainError,
)
from app.models.words import A, B, Composition, GaussianRational, Letter, NcPoly, Word
from app.services.combinatorics.combinatorics import compositions_enum

logger = logging.getLogger(__name__)

Letters = Tuple[Letter, ...]
PolySeries = List[NcPoly]


# Shuffle


@lru_cache(maxsize=None)
def _shuffle_left(u: Letters, v: Letters) -> Tuple[Tuple[Letters, int], ...]:
    # au ш bv = a(u ш bv) + b(au ш v)
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Dict[Letters, int] = Counter()
    for w, c in _shuffle_left(u[1:], v):
        out[(u[0],) + w] += c
    for w, c in _shuffle_left(u, v[1:]):
        out[(v[0],) + w] += c
    return tuple(out.items())


@lru_cache(maxsize=None)
def _shuffle_right(u: Letters, v: Letters) -> Tuple[Tuple[Letters, int], ...]:
    # ua ш vb = (u ш vb)a + (ua ш v)b
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Dict[Letters, int] = Counter()
    for w, c in _shuffle_right(u[:-1], v):
        out[w + (u[-1],)] += c
    for w, c in _shuffle_right(u, v[:-1]):
        out[w + (v[-1],)] += c
    return tuple(out.items())


def shuffle(u: Word, v: Word) -> NcPoly:
    """Shuffle product of two words by the leading-letter recursion."""
    return NcPoly({Word(w): c for w, c in _shuffle_left(u.letters, v.letters)})


def shuffle_right(u: Word, v: Word) -> NcPoly:
    """Shuffle product by the trailing-letter recursion."""
    return NcPoly({Word(w): c for w, c in _shuffle_right(u.letters, v.letters)})


def shuffle_poly(p: NcPoly, q: NcPoly) -> NcPoly:
    out: Dict[Word, GaussianRational] = {}
    for w1, c1 in p:
        for w2, c2 in q:
            c = c1 * c2
            for w, n in _shuffle_left(w1.letters, w2.letters):
                word = Word(w)
                out[word] = out.get(word, GaussianRational()) + c * n
    return NcPoly(out)


def shuffle_interleavings(m: int, n: int) -> Iterator[Tuple[int, ...]]:
    """Shuff(m, n) as the images (1-based) of the order-preserving injection of the first factor."""
    for positions in combinations(range(1, m + n + 1), m):
        yield positions


def apply_interleaving(u: Word, v: Word, phi: Tuple[int, ...]) -> Word:
    if len(phi) != len(u):
        raise BadArityError("interleaving length must match the first word")
    total = len(u) + len(v)
    first = iter(u)
    second = iter(v)
    chosen = set(phi)
    return Word(tuple(next(first) if i in chosen else next(second) for i in range(1, total + 1)))


def shuffle_lattice_vector(phi: Tuple[int, ...]) -> Tuple[int, ...]:
    """Gap vector (a_1..a_m) of an interleaving; entries >= 0 with sum <= n."""
    out = []
    prev = 0
    for p in phi:
        out.append(p - prev - 1)
        prev = p
    return tuple(out)


def shuffle_from_lattice_vector(a: Tuple[int, ...]) -> Tuple[int, ...]:
    out = []
    prev = 0
    for gap in a:
        if gap < 0:
            raise OutOfDomainError("lattice gaps must be nonnegative")
        prev = prev + gap + 1
        out.append(prev)
    return tuple(out)


# q-shuffle


@lru_cache(maxsize=None)
def _qshuffle(u: Letters, v: Letters) -> Tuple[Tuple[Letters, int], ...]:
    # au ш_q bv = a(u ш_q bv) + b(η(au) ш_q v)
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Dict[Letters, int] = Counter()
    for w, c in _qshuffle(u[1:], v):
        out[(u[0],) + w] += c
    eta_u = tuple(letter.shifted(1) for letter in u)
    for w, c in _qshuffle(eta_u, v[1:]):
        out[(v[0],) + w] += c
    return tuple(out.items())


def qshuffle(u: Word, v: Word) -> NcPoly:
    """Canonical q-shuffle expansion, always splitting on the leading letters."""
    return NcPoly({Word(w): c for w, c in _qshuffle(u.letters, v.letters)})


def qshuffle_poly(p: NcPoly, q: NcPoly) -> NcPoly:
    out: Dict[Word, GaussianRational] = {}
    for w1, c1 in p:
        for w2, c2 in q:
            c = c1 * c2
            for w, n in _qshuffle(w1.letters, w2.letters):
                word = Word(w)
                out[word] = out.get(word, GaussianRational()) + c * n
    return NcPoly(out)


def eta_shift(p: NcPoly, j: int) -> NcPoly:
    if j < 0:
        raise OutOfDomainError("eta shifts must be nonnegative", context={"j": j})
    if j == 0:
        return p
    return p.map_words(lambda w: w.shifted(j))


def forget_shifts(p: NcPoly) -> NcPoly:
    """Image of p when eta acts as the identity."""
    return p.map_words(lambda w: Word(tuple(Letter(letter.symbol) for letter in w)))


# Stuffle


@lru_cache(maxsize=None)
def _stuffle(u: Tuple[int, ...], v: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # (s,u')*(t,v') = s(u'*(t,v')) + t((s,u')*v') + (s+t)(u'*v')
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Dict[Tuple[int, ...], int] = Counter()
    for w, c in _stuffle(u[1:], v):
        out[(u[0],) + w] += c
    for w, c in _stuffle(u, v[1:]):
        out[(v[0],) + w] += c
    for w, c in _stuffle(u[1:], v[1:]):
        out[(u[0] + v[0],) + w] += c
    return tuple(out.items())


def stuffle(u: Composition, v: Composition) -> Counter:
    """Multiset of compositions in u * v, as a Counter."""
    return Counter({Composition(w): c for w, c in _stuffle(u.parts, v.parts)})


def format_multiset(result: Counter) -> str:
    """``(2,3) + (3,2) + (5)``, lexicographic on parts, multiplicities as ``2*(2,2)``."""
    if not result:
        return "0"
    pieces = []
    for comp in sorted(result, key=lambda c: c.parts):
        n = result[comp]
        pieces.append(str(comp) if n == 1 else f"{n}*{comp}")
    return " + ".join(pieces)


def stuffle_injection_pairs(m: int, n: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairs (phi, psi) of order-preserving injections N_m, N_n -> N_r whose images cover N_r."""
    for r in range(max(m, n), m + n + 1):
        shared = n - (r - m)
        if shared < 0 or shared > m:
            continue
        for phi in combinations(range(1, r + 1), m):
            rest = [i for i in range(1, r + 1) if i not in set(phi)]
            for common in combinations(phi, shared):
                yield phi, tuple(sorted(rest + list(common)))


def apply_injection_pair(u: Composition, v: Composition, pair) -> Composition:
    phi, psi = pair
    r = max(phi[-1] if phi else 0, psi[-1] if psi else 0)
    parts = [0] * r
    for j, p in enumerate(phi):
        parts[p - 1] += u[j]
    for j, p in enumerate(psi):
        parts[p - 1] += v[j]
    return Composition(tuple(parts))


def stuffle_lattice_vector(pair) -> Tuple[int, ...]:
    """Signed vector b with sum |b_j| <= n; a shared index with gap a_j maps to -(a_j + 1)."""
    phi, psi = pair
    image = set(psi)
    out = []
    prev = 0
    for p in phi:
        gap = p - prev - 1
        out.append(-(gap + 1) if p in image else gap)
        prev = p
    return tuple(out)


def stuffle_from_lattice_vector(b: Tuple[int, ...], n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    m = len(b)
    shared = sum(1 for x in b if x < 0)
    gaps = [(-x - 1) if x < 0 else x for x in b]
    if sum(gaps) + shared > n:
        raise OutOfDomainError("lattice vector exceeds the second length")
    r = m + n - shared
    phi = []
    prev = 0
    for gap in gaps:
        prev = prev + gap + 1
        phi.append(prev)
    common = [p for p, x in zip(phi, b) if x < 0]
    rest = [i for i in range(1, r + 1) if i not in set(phi)]
    return tuple(phi), tuple(sorted(rest + common))


# Words <-> compositions


def composition_to_word(s: Composition) -> Word:
    """(s_1..s_k) -> a^{s_1-1} b ... a^{s_k-1} b."""
    letters: List[Letter] = []
    for part in s:
        letters.extend([A] * (part - 1))
        letters.append(B)
    return Word(tuple(letters))


def word_to_composition(w: Word) -> Composition:
    if not w.is_classical:
        raise NotConvertibleError(f"word {w} uses letters outside {{a, b}}")
    if len(w) and w[-1] != B:
        raise NotConvertibleError(f"word {w} does not end in b")
    parts = []
    run = 1
    for letter in w:
        if letter == A:
            run += 1
        else:
            parts.append(run)
            run = 1
    return Composition(tuple(parts))


def dual_composition(s: Composition) -> Composition:
    """Reverse the word and swap a <-> b."""
    if not s.parts or s[0] < 2:
        raise NotAdmissibleError(f"composition {s} is not admissible", context={"parts": list(s.parts)})
    return word_to_composition(composition_to_word(s).reversed().swapped())


# Word constructions behind the shuffle theorems


def count_aa(w: Word) -> int:
    return sum(1 for i in range(len(w) - 1) if w[i] == A and w[i + 1] == A)


def phi_insertion(mvec: Tuple[int, ...]) -> Word:
    """(ab)^{m_0} prod_k (a^2 b)(ab)^{m_{2k-1}} b (ab)^{m_{2k}}."""
    if len(mvec) % 2 == 0:
        raise BadArityError("insertion vectors need an odd number of entries", context={"length": len(mvec)})
    if any(m < 0 for m in mvec):
        raise OutOfDomainError("insertion entries must be nonnegative")
    ab = Word((A, B))
    word = ab * mvec[0]
    for k in range(1, (len(mvec) - 1) // 2 + 1):
        word = word + Word((A, A, B)) + ab * mvec[2 * k - 1] + Word((B,)) + ab * mvec[2 * k]
    return word


def insertion_composition(mvec: Tuple[int, ...]) -> Composition:
    """Argument string {2}^{m_0},3,{2}^{m_1},1,... of the word phi_insertion(mvec)."""
    return word_to_composition(phi_insertion(mvec))


def s_words(m: int, n: int) -> List[Word]:
    if n < 0 or m < 2 * n:
        return []
    return [phi_insertion(mvec) for mvec in compositions_enum(2 * n + 1, m - 2 * n)]


def t_word_sum(m: int, n: int) -> NcPoly:
    return NcPoly({w: 1 for w in s_words(m, n)})


def s_words_by_shuffle(m: int, n: int) -> List[Word]:
    """Words of (ab)^n ш (ab)^{m-n} containing a^2 exactly n times."""
    if n < 0 or m < 2 * n:
        return []
    ab = Word((A, B))
    product = shuffle(ab * n, ab * (m - n))
    return [w for w in product.words() if count_aa(w) == n]


def t_binomial_sides(m: int) -> Tuple[Dict[int, NcPoly], Dict[int, NcPoly]]:
    """Coefficients of x^k y^{m-k} on both sides of the shuffle convolution formula."""
    ab = Word((A, B))
    lhs = {k: shuffle(ab * k, ab * (m - k)) for k in range(m + 1)}
    rhs: Dict[int, NcPoly] = {}
    for k in range(m + 1):
        total = NcPoly()
        for n in range(m // 2 + 1):
            lo = k - n
            if lo < 0 or lo > m - 2 * n:
                continue
            total = total + t_word_sum(m, n).scale(4 ** n * comb(m - 2 * n, lo))
        rhs[k] = total
    return lhs, rhs


C_PLUS = GaussianRational(Fraction(1, 2), Fraction(1, 2))   # 1/(1-i)
C_MINUS = GaussianRational(Fraction(1, 2), Fraction(-1, 2))  # 1/(1+i)


def broadhurst_series_words(order: int) -> Tuple[PolySeries, PolySeries]:
    """Truncations of A(z) and M(z): element d is the coefficient of z^d."""
    if order < 0:
        raise OutOfDomainError("truncation order must be nonnegative")
    ab = Word((A, B))
    a_series = [
        NcPoly.from_word(ab * (d // 2) + (Word((A,)) if d % 2 else Word()))
        for d in range(order + 1)
    ]
    tails = [Word(), Word((A,)), Word((A, A)), Word((A, A, B))]
    aabb = Word((A, A, B, B))
    m_series = [NcPoly.from_word(aabb * (d // 4) + tails[d % 4]) for d in range(order + 1)]
    return a_series, m_series


def scale_series(series: PolySeries, c: GaussianRational) -> PolySeries:
    """Substitute z -> c z."""
    return [p.scale(c ** d) for d, p in enumerate(series)]


def shuffle_series(left: PolySeries, right: PolySeries, order: int) -> PolySeries:
    out = []
    for d in range(order + 1):
        total = NcPoly()
        for d1 in range(d + 1):
            d2 = d - d1
            if d1 < len(left) and d2 < len(right):
                total = total + shuffle_poly(left[d1], right[d2])
        out.append(total)
    return out


def broadhurst_sides(order: int) -> Tuple[PolySeries, PolySeries]:
    """A(z/(1-i)) ш A(z/(1+i)) and M(z), through z^order."""
    a_series, m_series = broadhurst_series_words(order)
    lhs = shuffle_series(scale_series(a_series, C_PLUS), scale_series(a_series, C_MINUS), order)
    logger.debug("expanded shuffle factorization through degree %d", order)
    return lhs, m_series
