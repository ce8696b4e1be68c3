# app/services/suite/checks/mzv_checks.py
import logging
from fractions import Fraction
from math import comb, factorial
from typing import Any, Dict, List, Optional, Tuple

from app.core.config import get_settings
from app.core.errors import OutOfDomainError
from app.models.ball import Ball, ComplexBall
from app.models.check import CheckResult
from app.models.symbolic import ExactPiMultiple
from app.models.words import Composition
from app.services.combinatorics.combinatorics import (
    admissible_compositions,
    compositions_enum,
    positive_compositions,
)
from app.services.numerics.euler_sums import mzv_eval, multiple_polylog_eval
from app.services.numerics.quadrature import new_integral_eval
from app.services.suite.checks.check_registry import BaseCheck
from app.services.suite.checks.results import (
    bool_param,
    composition_param,
    exact_result,
    fraction_list_param,
    int_param,
    numeric_result,
)
from app.services.symbolic.zeta_symbols import (
    closed_forms,
    euler_reduction,
    evaluate_symbolic,
    markett_reduction,
    period1_exact,
    period1_newton,
    period1_reduce,
    to_pi_multiple,
)
from app.services.words.word_algebra import (
    composition_to_word,
    dual_composition,
    insertion_composition,
    shuffle,
    stuffle,
    word_to_composition,
)

logger = logging.getLogger(__name__)


class MzvTable:
    """Memo of zeta(s) balls for one check run."""

    def __init__(self, digits: int):
        self.digits = digits
        self._values: Dict[Composition, Ball] = {}

    def __call__(self, s: Composition) -> Ball:
        if s not in self._values:
            self._values[s] = mzv_eval(s, digits=self.digits)
        return self._values[s]

    def total(self, compositions) -> Ball:
        result = Ball.zero()
        for s, count in compositions:
            result = result + self(s) * count
        return result


def _tolerance(override: Optional[float]) -> float:
    return get_settings().MZV_TOLERANCE if override is None else override


class DualityCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "duality"

    @property
    def description(self) -> str:
        return "zeta(s) = zeta(dual(s)) for every admissible s up to max_weight"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        max_weight = int_param(params, "max_weight", 6)
        if max_weight < 3:
            raise OutOfDomainError("duality needs max_weight >= 3", context={"max_weight": max_weight})
        zeta = MzvTable(digits)
        results = []
        for weight in range(2, max_weight + 1):
            for depth in range(1, weight):
                for parts in admissible_compositions(weight, depth):
                    s = Composition(parts)
                    dual = dual_composition(s)
                    results.append(numeric_result(
                        self.name,
                        {"s": s.to_text(), "dual": dual.to_text()},
                        zeta(s),
                        zeta(dual),
                        _tolerance(tolerance),
                        digits,
                    ))
        return results


class SumFormulaCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "sum_formula"

    @property
    def description(self) -> str:
        return "sum of zeta(s) over admissible s of weight n and depth k equals zeta(n)"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        n, k = int_param(params, "n"), int_param(params, "k")
        if not n > k >= 1:
            raise OutOfDomainError("the sum formula needs n > k >= 1", context={"n": n, "k": k})
        zeta = MzvTable(digits)
        terms = [(Composition(c), 1) for c in positive_compositions(n, k) if c[0] > 1]
        return [numeric_result(
            self.name,
            {"n": n, "k": k},
            zeta.total(terms),
            zeta(Composition.of(n)),
            _tolerance(tolerance),
            digits,
            notes=f"{len(terms)} terms",
        )]


class OhnoCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "ohno"

    @property
    def description(self) -> str:
        return "S(p; m) = S(dual(p); m) for the shifted argument sums"

    @staticmethod
    def shifted_sum(p: Composition, m: int, zeta: MzvTable) -> Ball:
        terms = []
        for e in compositions_enum(p.depth, m):
            terms.append((Composition(tuple(a + b for a, b in zip(p.parts, e))), 1))
        return zeta.total(terms)

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        p = composition_param(params, "p")
        m = int_param(params, "m", 0)
        if m < 0:
            raise OutOfDomainError("m must be nonnegative", context={"m": m})
        dual = dual_composition(p)
        zeta = MzvTable(digits)
        return [numeric_result(
            self.name,
            {"p": p.to_text(), "m": m},
            self.shifted_sum(p, m, zeta),
            self.shifted_sum(dual, m, zeta),
            _tolerance(tolerance),
            digits,
            notes=f"dual {dual.to_text()}",
        )]


class DoubleShuffleCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "double_shuffle"

    @property
    def description(self) -> str:
        return "zeta(u) zeta(v) equals both its stuffle and its shuffle expansion"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        zeta = MzvTable(digits)
        if "u" in params or "v" in params:
            pairs = [(composition_param(params, "u", ""), composition_param(params, "v", ""))]
        else:
            pairs = self.pairs(int_param(params, "max_depth", 4), int_param(params, "max_weight", 6))
        results = []
        for u, v in pairs:
            results.extend(self.check_pair(u, v, zeta, digits, _tolerance(tolerance)))
        return results

    @staticmethod
    def pairs(max_depth: int, max_weight: int) -> List[Tuple[Composition, Composition]]:
        """Unordered pairs of nonempty admissible compositions within the depth and weight bounds."""
        pool = [
            Composition(c)
            for weight in range(2, max_weight + 1)
            for depth in range(1, min(weight, max_depth))
            for c in admissible_compositions(weight, depth)
        ]
        return [
            (u, v)
            for i, u in enumerate(pool)
            for v in pool[i:]
            if u.depth + v.depth <= max_depth and u.weight + v.weight <= max_weight
        ]

    def check_pair(self, u: Composition, v: Composition, zeta: MzvTable, digits: int, tol: float) -> List[CheckResult]:
        product = zeta(u) * zeta(v)
        stuffle_side = zeta.total(stuffle(u, v).items())
        shuffle_side = zeta.total(
            (word_to_composition(w), int(c.re))
            for w, c in shuffle(composition_to_word(u), composition_to_word(v))
        )
        params = {"u": u.to_text(), "v": v.to_text()}
        return [
            numeric_result(self.name, {**params, "route": "stuffle"}, product, stuffle_side, tol, digits),
            numeric_result(self.name, {**params, "route": "shuffle"}, product, shuffle_side, tol, digits),
        ]


def _pi_ball(value: ExactPiMultiple, digits: int) -> Ball:
    return evaluate_symbolic(value, digits=digits)


def _insertion_terms(m: int, n: int) -> List[Tuple[int, ...]]:
    if n < 0 or m < 2 * n:
        raise OutOfDomainError("cyclic insertion needs m >= 2n >= 0", context={"m": m, "n": n})
    return compositions_enum(2 * n + 1, m - 2 * n)


def _rotations(mvec: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return [mvec[j:] + mvec[:j] for j in range(len(mvec))]


class CyclicInsertionCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "cyclic_insertion"

    @property
    def description(self) -> str:
        return "sum of Z(s) over C_{2n+1}(m-2n) equals 2 pi^(2m) binom(m+1, 2n+1) / (2m+2)!"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        m, n = int_param(params, "m"), int_param(params, "n")
        orbits = bool_param(params, "orbits", False)
        tol = _tolerance(tolerance)
        mvecs = _insertion_terms(m, n)
        zeta = MzvTable(digits)
        lhs = zeta.total((insertion_composition(v), 1) for v in mvecs)
        closed = ExactPiMultiple(Fraction(2 * comb(m + 1, 2 * n + 1), factorial(2 * m + 2)), 2 * m)
        results = [numeric_result(self.name, {"m": m, "n": n}, lhs, _pi_ball(closed, digits), tol, digits)]
        if n == 0:
            exact = period1_exact(2, m)
            results.append(exact_result(
                self.name, {"m": m, "n": n, "route": "exact"}, exact, closed, exact == closed,
                notes="zeta({2}^m) by the partition formula",
            ))
        if orbits:
            target = _pi_ball(closed_forms("z2block", m), digits)
            seen = set()
            for mvec in mvecs:
                orbit = _rotations(mvec)
                key = min(orbit)
                if key in seen:
                    continue
                seen.add(key)
                value = zeta.total((insertion_composition(r), 1) for r in orbit)
                results.append(numeric_result(
                    self.name,
                    {"m": m, "n": n, "orbit": ",".join(str(v) for v in key)},
                    value,
                    target,
                    tol,
                    digits,
                    notes="cyclic insertion conjecture, numerical evidence",
                ))
        return results


class CyclicSumCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "cyclic_sum"

    @property
    def description(self) -> str:
        return "sum of the cyclic orbit sums over C_{2n+1}(m-2n) equals Z(m) binom(m, 2n)"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        m, n = int_param(params, "m"), int_param(params, "n")
        mvecs = _insertion_terms(m, n)
        zeta = MzvTable(digits)
        lhs = zeta.total(
            (insertion_composition(r), 1) for mvec in mvecs for r in _rotations(mvec)
        )
        closed = closed_forms("z2block", m).scale(comb(m, 2 * n))
        return [numeric_result(self.name, {"m": m, "n": n}, lhs, _pi_ball(closed, digits), _tolerance(tolerance), digits)]


class ReductionCheck(BaseCheck):
    REDUCTIONS = ("euler", "markett", "z31", "z313", "z213", "period1")

    @property
    def name(self) -> str:
        return "reduction"

    @property
    def description(self) -> str:
        return "zeta values against their reductions to products of Riemann zeta values or pi powers"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        which = str(params.get("which", params.get("name", "euler")))
        tol = _tolerance(tolerance)
        zeta = MzvTable(digits)
        if which == "euler":
            m = int_param(params, "m", 2)
            s, symbolic, shown = Composition.of(m, 1), euler_reduction(m), {"m": m}
        elif which == "markett":
            s_arg = int_param(params, "s", 3)
            s, symbolic, shown = Composition.of(s_arg, 1, 1), markett_reduction(s_arg), {"s": s_arg}
        elif which in ("z31", "z313", "z213"):
            n = int_param(params, "n", 1)
            head = {"z31": (), "z313": (3,), "z213": (2,)}[which]
            block = (3, 1) if which == "z31" else (1, 3)
            s, symbolic, shown = Composition(head + block * n), closed_forms(which, n), {"n": n}
        elif which == "period1":
            return self.period_one(int_param(params, "s", 2), int_param(params, "k", 3), zeta, digits, tol)
        else:
            raise OutOfDomainError(f"unknown reduction {which!r}", context={"choices": list(self.REDUCTIONS)})
        return [numeric_result(
            self.name,
            {"which": which, **shown},
            zeta(s),
            evaluate_symbolic(symbolic, digits=digits),
            tol,
            digits,
            notes=f"zeta{s} = {symbolic}",
        )]

    def period_one(self, s: int, k: int, zeta: MzvTable, digits: int, tol: float) -> List[CheckResult]:
        if s < 2 or k < 0:
            raise OutOfDomainError("period one needs s >= 2 and k >= 0", context={"s": s, "k": k})
        params = {"which": "period1", "s": s, "k": k}
        partition = period1_reduce(k)
        newton = period1_newton(k)
        symbolic = partition.instantiate(s)
        results = [
            numeric_result(
                self.name, params, zeta(Composition((s,) * k)), evaluate_symbolic(symbolic, digits=digits), tol, digits,
                notes=f"zeta({{{s}}}^{k}) = {symbolic}",
            ),
            exact_result(self.name, {**params, "route": "newton"}, partition, newton, partition == newton),
        ]
        if s % 2 == 0:
            exact = period1_exact(s, k)
            newton_exact = to_pi_multiple(newton.instantiate(s))
            results.append(exact_result(
                self.name, {**params, "route": "exact"}, exact, newton_exact, exact == newton_exact,
            ))
            if s == 2:
                closed = closed_forms("z2block", k)
                results.append(exact_result(self.name, {**params, "route": "z2block"}, exact, closed, exact == closed))
        return results


class NewIntegralCheck(BaseCheck):
    @property
    def name(self) -> str:
        return "new_integral"

    @property
    def description(self) -> str:
        return "chain-integral quadrature of Li_s(x) against its nested series"

    def run(self, params: Dict[str, Any], digits: int, tolerance: Optional[float] = None) -> List[CheckResult]:
        s = composition_param(params, "s")
        default_x = ",".join(["1/2"] * s.depth)
        xs = fraction_list_param(params, "x", default_x)
        quad_order = params.get("quad_order")
        lhs = new_integral_eval(s, xs, int(quad_order) if quad_order is not None else None)
        rhs = multiple_polylog_eval(s.parts, [ComplexBall.exact(x, 0) for x in xs], digits=digits)
        tol = get_settings().INTEGRAL_TOLERANCE if tolerance is None else tolerance
        return [numeric_result(
            self.name,
            {"s": s.to_text(), "x": ",".join(str(x) for x in xs)},
            ComplexBall.from_ball(lhs),
            rhs,
            tol,
            min(digits, 15),
            notes="quadrature radius estimated from orders n and 2n",
        )]
