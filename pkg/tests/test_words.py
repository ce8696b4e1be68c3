from fractions import Fraction
from itertools import product
from math import comb

import pytest

from app.core.errors import BadArityError, NotAdmissibleError, NotConvertibleError, OutOfDomainError, ParseError
from app.models.words import A, B, Composition, Letter, NcPoly, Word
from app.services.combinatorics.combinatorics import lattice_points, stuffle_count
from app.services.words.parsing import (
    format_poly,
    format_word,
    parse_complex,
    parse_composition,
    parse_signed_composition,
    parse_word,
)
from app.services.words.word_algebra import (
    apply_injection_pair,
    apply_interleaving,
    broadhurst_sides,
    composition_to_word,
    dual_composition,
    eta_shift,
    forget_shifts,
    format_multiset,
    insertion_composition,
    phi_insertion,
    qshuffle,
    qshuffle_poly,
    s_words,
    s_words_by_shuffle,
    shuffle,
    shuffle_from_lattice_vector,
    shuffle_interleavings,
    shuffle_lattice_vector,
    shuffle_poly,
    shuffle_right,
    stuffle,
    stuffle_from_lattice_vector,
    stuffle_injection_pairs,
    stuffle_lattice_vector,
    t_binomial_sides,
    word_to_composition,
)


def words_up_to(length: int):
    for n in range(length + 1):
        for letters in product((A, B), repeat=n):
            yield Word(tuple(letters))


# Parsing


def test_parse_word_with_shifts():
    w = parse_word("ab[2]a")
    assert w.letters == (A, Letter("b", 2), A)
    assert format_word(w) == "ab[2]a"


def test_parse_word_empty_forms():
    assert parse_word("1") == Word()
    assert parse_word("") == Word()
    assert format_word(Word()) == "1"


def test_parse_word_reports_position():
    with pytest.raises(ParseError) as info:
        parse_word("aB")
    assert info.value.position == 1


def test_parse_word_unterminated_bracket():
    with pytest.raises(ParseError):
        parse_word("a[2")


def test_parse_composition():
    assert parse_composition("(3,1)") == Composition((3, 1))
    assert parse_composition("2, 2 ,1").parts == (2, 2, 1)
    assert parse_composition("()").parts == ()


def test_parse_composition_rejects_zero_with_position():
    with pytest.raises(ParseError) as info:
        parse_composition("3,0")
    assert info.value.position == 2


def test_parse_signed_composition_bars():
    arg = parse_signed_composition("-1,1")
    assert arg.parts == (1, 1)
    assert arg.signs == (-1, 1)


def test_parse_complex():
    assert parse_complex("1/2-1/3i") == (Fraction(1, 2), Fraction(-1, 3))
    assert parse_complex("i")[1] == 1
    assert parse_complex("-2")[0] == -2


# Shuffle


def test_shuffle_small_product():
    poly = shuffle(Word.of("ab"), Word.of("b"))
    assert poly.coefficient(Word.of("abb")) == 2
    assert poly.coefficient(Word.of("bab")) == 1
    assert len(poly) == 2


def test_shuffle_with_empty_word_is_identity():
    w = Word.of("aab")
    assert shuffle(w, Word()) == NcPoly.from_word(w)
    assert shuffle(Word(), w) == NcPoly.from_word(w)


def test_shuffle_left_and_right_recursions_agree():
    words = list(words_up_to(3))
    for u in words:
        for v in words:
            assert shuffle(u, v) == shuffle_right(u, v)


def test_shuffle_is_commutative_and_counts_interleavings():
    words = list(words_up_to(3))
    for u in words:
        for v in words:
            p = shuffle(u, v)
            assert p == shuffle(v, u)
            assert p.mass() == comb(len(u) + len(v), len(u))


def test_shuffle_is_associative():
    u, v, w = Word.of("ab"), Word.of("b"), Word.of("aa")
    left = shuffle_poly(shuffle(u, v), NcPoly.from_word(w))
    right = shuffle_poly(NcPoly.from_word(u), shuffle(v, w))
    assert left == right


def test_interleavings_build_the_shuffle():
    u, v = Word.of("ab"), Word.of("ba")
    counts = {}
    for phi in shuffle_interleavings(len(u), len(v)):
        w = apply_interleaving(u, v, phi)
        counts[w] = counts.get(w, 0) + 1
    assert NcPoly(counts) == shuffle(u, v)


def test_interleaving_length_mismatch():
    with pytest.raises(BadArityError):
        apply_interleaving(Word.of("ab"), Word.of("b"), (1,))


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 2), (3, 3)])
def test_shuffle_lattice_bijection(m, n):
    vectors = set()
    for phi in shuffle_interleavings(m, n):
        a = shuffle_lattice_vector(phi)
        assert all(g >= 0 for g in a) and sum(a) <= n
        assert shuffle_from_lattice_vector(a) == phi
        vectors.add(a)
    assert vectors == set(lattice_points(m, n, nonnegative=True))


# q-shuffle


def test_qshuffle_of_two_letters():
    poly = qshuffle(Word.of("a"), Word.of("b"))
    assert poly.coefficient(Word.of("ab")) == 1
    assert poly.coefficient(Word((B, Letter("a", 1)))) == 1
    assert len(poly) == 2


def test_qshuffle_reduces_to_shuffle_without_shifts():
    words = list(words_up_to(3))
    for u in words:
        for v in words:
            assert forget_shifts(qshuffle(u, v)) == shuffle(u, v)


def test_qshuffle_a_with_bc_has_three_terms():
    poly = qshuffle(Word.of("a"), Word.of("bc"))
    expected = NcPoly({
        Word.of("abc"): 1,
        Word((Letter("b"), Letter("a", 1), Letter("c"))): 1,
        Word((Letter("b"), Letter("c"), Letter("a", 2))): 1,
    })
    assert poly == expected


def test_qshuffle_poly_is_bilinear():
    p = NcPoly({Word.of("a"): 2, Word.of("b"): -1})
    q = NcPoly.from_word(Word.of("ab"))
    expected = qshuffle(Word.of("a"), Word.of("ab")).scale(2) - qshuffle(Word.of("b"), Word.of("ab"))
    assert qshuffle_poly(p, q) == expected


def test_eta_shift_commutes_with_qshuffle():
    u, v = Word.of("ab"), Word.of("c")
    assert eta_shift(qshuffle(u, v), 2) == qshuffle(u.shifted(2), v.shifted(2))
    assert eta_shift(qshuffle(u, v), 0) == qshuffle(u, v)
    with pytest.raises(OutOfDomainError):
        eta_shift(NcPoly.from_word(u), -1)


# Stuffle


def test_stuffle_of_two_singletons():
    result = stuffle(Composition((2,)), Composition((3,)))
    assert format_multiset(result) == "(2,3) + (3,2) + (5)"


def test_stuffle_multiplicities():
    result = stuffle(Composition((2,)), Composition((2,)))
    assert format_multiset(result) == "2*(2,2) + (4)"


@pytest.mark.parametrize("m,n", [(0, 3), (1, 1), (2, 1), (2, 3), (3, 3)])
def test_stuffle_size_matches_count(m, n):
    result = stuffle(Composition(tuple(range(1, m + 1))), Composition(tuple(range(10, 10 + n))))
    assert sum(result.values()) == stuffle_count(m, n)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 2), (2, 4)])
def test_stuffle_lattice_bijection(m, n):
    u = Composition(tuple(range(1, m + 1)))
    v = Composition(tuple(range(10, 10 + n)))
    vectors = set()
    products = {}
    for pair in stuffle_injection_pairs(m, n):
        b = stuffle_lattice_vector(pair)
        assert sum(abs(x) for x in b) <= n
        assert stuffle_from_lattice_vector(b, n) == pair
        vectors.add(b)
        w = apply_injection_pair(u, v, pair)
        products[w] = products.get(w, 0) + 1
    assert vectors == set(lattice_points(m, n))
    assert products == dict(stuffle(u, v))


# Words and compositions


def test_composition_word_correspondence():
    assert composition_to_word(Composition((3, 1))) == Word.of("aabb")
    assert word_to_composition(Word.of("abaab")) == Composition((2, 3))


def test_word_to_composition_rejects_trailing_a():
    with pytest.raises(NotConvertibleError):
        word_to_composition(Word.of("ba"))


@pytest.mark.parametrize("s,dual", [((3,), (2, 1)), ((2,), (2,)), ((4, 1, 1), (4, 1, 1)), ((4,), (2, 1, 1))])
def test_dual_composition(s, dual):
    assert dual_composition(Composition(s)) == Composition(dual)


def test_duality_is_a_weight_preserving_involution():
    for w in words_up_to(7):
        if len(w) < 2 or w[0] != A or w[-1] != B:
            continue
        s = word_to_composition(w)
        d = dual_composition(s)
        assert d.weight == s.weight
        assert dual_composition(d) == s


def test_dual_rejects_inadmissible():
    with pytest.raises(NotAdmissibleError):
        dual_composition(Composition((1, 2)))


# Shuffle theorems


def test_phi_insertion():
    assert phi_insertion((1,)) == Word.of("ab")
    assert insertion_composition((0, 0, 0)) == Composition((3, 1))
    assert insertion_composition((1, 0, 0)) == Composition((2, 3, 1))


def test_phi_insertion_needs_odd_length():
    with pytest.raises(BadArityError):
        phi_insertion((0, 0))


@pytest.mark.parametrize("m", range(2, 6))
def test_s_words_match_the_shuffle_description(m):
    for n in range(m // 2 + 1):
        assert sorted(s_words(m, n), key=lambda w: w.sort_key) == \
            sorted(s_words_by_shuffle(m, n), key=lambda w: w.sort_key)


@pytest.mark.parametrize("m", range(0, 5))
def test_shuffle_convolution_formula(m):
    lhs, rhs = t_binomial_sides(m)
    assert lhs == rhs


def test_shuffle_factorization_through_degree_eight():
    lhs, rhs = broadhurst_sides(8)
    assert lhs == rhs
    assert format_poly(rhs[4]) == "aabb"
