# app/services/suite/checks/word_checks.py
import logging
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

import sympy

from app.core.errors import OutOfDomainError
from app.models.check import CheckResult
from app.models.words import Composition, Letter, NcPoly, Word
from app.services.combinatorics.combinatorics import (
    LIMIT_ORDERS,
    lattice_point_count,
    nonpositive_limit,
    stuffle_count,
    tau_bruteforce,
    tau_factorizations,
)
from app.services.numerics.q_integrals import (
    classical_value,
    default_q_sequence,
    exactly_equal,
    q_limit_check,
    q_poly_value_exact,
    q_word_value_exact,
)
from app.services.suite.checks.check_registry import BaseCheck
from app.services.suite.checks.results import (
    exact_result,
    forms_param,
    fraction_param,
    int_param,
    word_param,
)
from app.services.words.word_algebra import broadhurst_sides, qshuffle, stuffle, t_binomial_sides

logger = logging.getLogger(__name__)


def _first_mismatch(label: str, mismatches: List[str]) -> Optional[str]:
    if not mismatches:
        return None
    return f"{len(mismatches)} {label} differ, first: {mismatches[0]}"


class ShuffleTheoremsCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "shuffle_theorems"

    @property
    def description(self) -> str:
        return "shuffle convolution formula and the shuffle factorization of M(z), exactly"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        m_max = int_param(params, "m_max", 6)
        order = int_param(params, "order", 12)
        if m_max < 0:
            raise OutOfDomainError("m_max must be nonnegative", context={"m_max": m_max})
        results = []
        for m in range(m_max + 1):
            lhs, rhs = t_binomial_sides(m)
            bad = [str(k) for k in range(m + 1) if lhs[k] != rhs[k]]
            results.append(exact_result(
                self.name,
                {"theorem": "binomial", "m": m},
                f"{sum(len(p) for p in lhs.values())} words",
                f"{sum(len(p) for p in rhs.values())} words",
                not bad,
                notes=_first_mismatch("coefficients of x^k y^(m-k)", [f"k={k}" for k in bad]),
            ))
        lhs_series, rhs_series = broadhurst_sides(order)
        bad = [d for d in range(order + 1) if lhs_series[d] != rhs_series[d]]
        results.append(exact_result(
            self.name,
            {"theorem": "factorization", "order": order},
            f"z^{order}: {lhs_series[order]}",
            f"z^{order}: {rhs_series[order]}",
            not bad,
            notes=_first_mismatch("degrees", [f"z^{d}" for d in bad]),
        ))
        return results


def _words_over(symbols: List[str], length: int) -> List[Word]:
    return [Word(tuple(Letter(s) for s in letters)) for letters in product(symbols, repeat=length)]


class QShuffleCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "q_shuffle"

    @property
    def description(self) -> str:
        return "Jackson value of u q-shuffle v equals the product of the values, in exact arithmetic"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        forms = forms_param(params)
        x = fraction_param(params, "x", "1")
        q = fraction_param(params, "q", "1/2")
        point = {"x": str(x), "q": str(q)}
        if "u" in params or "v" in params:
            u, v = word_param(params, "u", "1"), word_param(params, "v", "1")
            lhs, rhs = self.sides(u, v, forms, x, q)
            return [exact_result(self.name, {"u": str(u), "v": str(v), **point}, lhs, rhs, exactly_equal(lhs, rhs))]
        max_length = int_param(params, "max_length", 4)
        symbols = sorted(forms)
        pairs: List[Tuple[Word, Word]] = [
            (u, v)
            for total in range(max_length + 1)
            for left in range(total + 1)
            for u in _words_over(symbols, left)
            for v in _words_over(symbols, total - left)
        ]
        mismatches = []
        for u, v in pairs:
            lhs, rhs = self.sides(u, v, forms, x, q)
            if not exactly_equal(lhs, rhs):
                mismatches.append(f"{u} * {v}")
        return [exact_result(
            self.name,
            {"max_length": max_length, **point},
            f"{len(pairs)} pairs",
            f"{len(pairs) - len(mismatches)} equal",
            not mismatches,
            notes=_first_mismatch("pairs", mismatches),
        )]

    @staticmethod
    def sides(u: Word, v: Word, forms, x: Fraction, q: Fraction) -> Tuple[sympy.Expr, sympy.Expr]:
        lhs = q_poly_value_exact(qshuffle(u, v), forms, x, q)
        rhs = q_word_value_exact(u, forms, x, q) * q_word_value_exact(v, forms, x, q)
        return lhs, rhs


def _letters(text: str) -> Word:
    return Word(tuple(Letter(s, int(j)) for s, j in (piece.split(":") for piece in text.split())))


# w1 q-shuffle w2 w3, expanded two ways
FIRST_EXPANSION = ("a:0 b:0 c:0", "b:0 a:1 c:0", "b:0 c:0 a:2")
SECOND_EXPANSION = ("a:0 b:0 c:0", "b:0 a:1 c:1", "b:0 c:0 a:1")


class QExpansionsCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "q_expansions"

    @property
    def description(self) -> str:
        return "two equivalent expansions of w1 q-shuffle w2 w3 have equal Jackson values"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        forms = forms_param(params, default="a=0,b=1,c=2")
        x = fraction_param(params, "x", "1")
        q = fraction_param(params, "q", "1/2")
        first = NcPoly({_letters(w): 1 for w in FIRST_EXPANSION})
        second = NcPoly({_letters(w): 1 for w in SECOND_EXPANSION})
        canonical = qshuffle(Word.of("a"), Word.of("bc"))
        v1 = q_poly_value_exact(first, forms, x, q)
        v2 = q_poly_value_exact(second, forms, x, q)
        product_value = q_word_value_exact(Word.of("a"), forms, x, q) * q_word_value_exact(Word.of("bc"), forms, x, q)
        point = {"x": str(x), "q": str(q), "forms": ",".join(f"{k}={v}" for k, v in sorted(forms.items()))}
        return [
            exact_result(self.name, {**point, "route": "expansions"}, v1, v2, exactly_equal(v1, v2),
                         notes=f"{first} vs {second}"),
            exact_result(self.name, {**point, "route": "recursion"}, first, canonical, first == canonical),
            exact_result(self.name, {**point, "route": "product"}, v2, product_value, exactly_equal(v2, product_value)),
        ]


class QLimitCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "q_limit"

    @property
    def description(self) -> str:
        return "Jackson values converge to the classical nested integral as q -> 1-, with error O(1 - q)"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        forms = forms_param(params)
        word = word_param(params, "word", "ab")
        x = fraction_param(params, "x", "1")
        count = int_param(params, "count", 8)
        if count < 2:
            raise OutOfDomainError("q_limit needs at least two points", context={"count": count})
        qs = default_q_sequence(count)
        classical = classical_value(word, forms, x)
        values = q_limit_check(word, forms, x, qs)
        errors = [abs(float(sympy.N(v - classical, 30))) for v in values]
        ratios = [e / float(1 - q) for e, q in zip(errors, qs)]
        bound = 4 * max(ratios[0], 1.0)
        monotone = all(b <= a for a, b in zip(errors, errors[1:]))
        passed = monotone and max(ratios) <= bound
        return [CheckResult(
            name=self.name,
            params={"word": str(word), "x": str(x), "count": count},
            lhs=str(values[-1]),
            rhs=str(classical),
            residual=errors[-1],
            tolerance=bound * float(1 - qs[-1]),
            passed=passed and errors[-1] <= bound * float(1 - qs[-1]),
            notes=f"error/(1-q) from {ratios[0]:.4g} to {ratios[-1]:.4g}",
        )]


class CountsCheck(BaseCheck):
    KINDS = ("stuffle", "tau", "limits")

    @property
    def name(self) -> str:
        return "counts"

    @property
    def description(self) -> str:
        return "stuffle counts, factorization counts and nonpositive limits against brute force"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        kind = str(params.get("kind", "stuffle"))
        if kind == "stuffle":
            return [self.stuffle_counts(int_param(params, "max", 8))]
        if kind == "tau":
            return self.tau_counts(int_param(params, "max_m", 2000), int_param(params, "max_k", 4))
        if kind == "limits":
            return self.limits()
        raise OutOfDomainError(f"unknown count kind {kind!r}", context={"choices": list(self.KINDS)})

    def stuffle_counts(self, size: int) -> CheckResult:
        mismatches = []
        for m in range(size + 1):
            for n in range(size + 1):
                expected = stuffle_count(m, n)
                brute = sum(stuffle(Composition((1,) * m), Composition((2,) * n)).values())
                if len({expected, brute, lattice_point_count(m, n), stuffle_count(n, m)}) != 1:
                    mismatches.append(f"({m},{n})")
        return exact_result(
            self.name,
            {"kind": "stuffle", "max": size},
            f"f({size},{size}) = {stuffle_count(size, size)}",
            f"{(size + 1) ** 2 - len(mismatches)} of {(size + 1) ** 2} entries agree",
            not mismatches,
            notes=_first_mismatch("entries", mismatches),
        )

    def tau_counts(self, max_m: int, max_k: int) -> List[CheckResult]:
        mismatches = [
            f"tau_{k}({m})"
            for m in range(1, max_m + 1)
            for k in range(1, max_k + 1)
            if tau_factorizations(m, k) != tau_bruteforce(m, k)
        ]
        return [
            exact_result(
                self.name,
                {"kind": "tau", "max_m": max_m, "max_k": max_k},
                "partition formula",
                "brute force",
                not mismatches,
                notes=_first_mismatch("values", mismatches),
            ),
            exact_result(self.name, {"kind": "tau", "m": 12, "k": 2}, tau_factorizations(12, 2), 3,
                         tau_factorizations(12, 2) == 3),
        ]

    def limits(self) -> List[CheckResult]:
        expected = {"s1_first": Fraction(1, 3), "sk_first": Fraction(5, 12)}
        results = []
        for order in LIMIT_ORDERS:
            value = nonpositive_limit(0, 2, order)
            results.append(exact_result(
                self.name, {"kind": "limits", "n": 0, "k": 2, "order": order}, value, expected[order],
                value == expected[order],
            ))
        return results
