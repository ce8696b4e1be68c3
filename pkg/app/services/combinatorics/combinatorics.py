# app/services/combinatorics/combinatorics.py
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from app.core.errors import AppError, OutOfDomainError
from app.models.partition import Partition


SEQUENCE_KINDS = ("stirling1", "stirling2", "bernoulli")
LIMIT_ORDERS = ("s1_first", "sk_first")


# Stuffle counts


def stuffle_count_binomial(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n + k, m) for k in range(m + 1))


def stuffle_count_weighted(m: int, n: int) -> int:
    return sum(comb(n, k) * comb(m, k) * 2 ** k for k in range(min(m, n) + 1))


@lru_cache(maxsize=None)
def stuffle_count_recursive(m: int, n: int) -> int:
    """Coefficients of (1 - x - y - xy)^{-1}."""
    if m == 0 or n == 0:
        return 1
    return (
        stuffle_count_recursive(m - 1, n)
        + stuffle_count_recursive(m, n - 1)
        + stuffle_count_recursive(m - 1, n - 1)
    )


def stuffle_count(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise OutOfDomainError("stuffle counts need nonnegative lengths", context={"m": m, "n": n})
    routes = (stuffle_count_binomial(m, n), stuffle_count_weighted(m, n), stuffle_count_recursive(m, n))
    if len(set(routes)) != 1:
        raise AppError(
            f"stuffle count routes disagree for ({m}, {n})",
            code="INCONSISTENT_ROUTES",
            context={"routes": list(routes)},
        )
    return routes[0]


@lru_cache(maxsize=None)
def lattice_point_count(m: int, n: int) -> int:
    """|{b in Z^m : sum |b_j| <= n}|, one coordinate at a time."""
    if m == 0:
        return 1 if n >= 0 else 0
    return sum(
        (1 if b == 0 else 2) * lattice_point_count(m - 1, n - b)
        for b in range(n + 1)
    )


def lattice_points(m: int, n: int, nonnegative: bool = False) -> Iterator[Tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    values = range(0, n + 1) if nonnegative else range(-n, n + 1)
    for b in values:
        for rest in lattice_points(m - 1, n - abs(b), nonnegative):
            yield (b,) + rest


# Compositions and partitions


def compositions_enum(k: int, n: int) -> List[Tuple[int, ...]]:
    """All k-tuples of nonnegative integers summing to n, first entry descending."""
    if k < 1 or n < 0:
        raise OutOfDomainError("compositions need k >= 1 parts and total n >= 0", context={"k": k, "n": n})
    return list(_compositions(k, n))


def _compositions(k: int, n: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(k - 1, n - first):
            yield (first,) + rest


def positive_compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Ordered k-tuples of positive integers with sum n."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for c in (_compositions(k, n - k) if n >= k else ()):
        yield tuple(x + 1 for x in c)


def admissible_compositions(weight: int, depth: int) -> Iterator[Tuple[int, ...]]:
    for c in positive_compositions(weight, depth):
        if c[0] >= 2:
            yield c


def partitions_calpha(k: int) -> List[Partition]:
    if k < 0:
        raise OutOfDomainError("partitions need k >= 0")
    return [Partition(p) for p in _partitions(k, k)]


def _partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


# Factorizations


def divisors(m: int) -> List[int]:
    small = [d for d in range(1, int(m ** 0.5) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def integer_root(m: int, e: int) -> Union[int, None]:
    r = round(m ** (1.0 / e))
    for c in (r - 1, r, r + 1):
        if c > 0 and c ** e == m:
            return c
    return None


def divisor_count_for_partition(alpha: Partition, m: int) -> int:
    """d_alpha(m): ordered tuples (d_i) of positive integers with prod d_i^{alpha_i} = m."""
    return _d_alpha(alpha.parts, m)


@lru_cache(maxsize=None)
def _d_alpha(parts: Tuple[int, ...], m: int) -> int:
    if not parts:
        return 1 if m == 1 else 0
    e = parts[0]
    total = 0
    for d in divisors(m):
        root = integer_root(d, e)
        if root is not None:
            total += _d_alpha(parts[1:], m // d)
    return total


def tau_factorizations(m: int, k: int) -> int:
    """Unordered factorizations of m into k distinct factors, 1 allowed."""
    if m < 1 or k < 1:
        raise OutOfDomainError("tau needs m >= 1 and k >= 1", context={"m": m, "k": k})
    total = Fraction(0)
    for alpha in partitions_calpha(k):
        total += Fraction(divisor_count_for_partition(alpha, m), alpha.c_alpha)
    value = (-1) ** k * total
    if value.denominator != 1:
        raise AppError(f"non-integral factorization count for ({m}, {k})", code="INCONSISTENT_ROUTES")
    return int(value)


def tau_bruteforce(m: int, k: int) -> int:
    ds = divisors(m)

    def count(rest: int, need: int, start: int) -> int:
        if need == 0:
            return 1 if rest == 1 else 0
        total = 0
        for i in range(start, len(ds)):
            d = ds[i]
            if d > rest:
                break
            if rest % d == 0:
                total += count(rest // d, need - 1, i + 1)
        return total

    return count(m, k, 0)


# Special sequences


@lru_cache(maxsize=None)
def stirling1(k: int, j: int) -> int:
    """Signed: x(x-1)...(x-k+1) = sum_j s(k,j) x^j."""
    if k == 0 and j == 0:
        return 1
    if k == 0 or j == 0:
        return 0
    return stirling1(k - 1, j - 1) - (k - 1) * stirling1(k - 1, j)


@lru_cache(maxsize=None)
def stirling2(k: int, j: int) -> int:
    if k == 0 and j == 0:
        return 1
    if k == 0 or j == 0:
        return 0
    return j * stirling2(k - 1, j) + stirling2(k - 1, j - 1)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise OutOfDomainError("Bernoulli index must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    return -sum(Fraction(comb(n + 1, j)) * bernoulli(j) for j in range(n)) / (n + 1)


def special_sequences(kind: str, indices: Sequence[int]) -> Union[int, Fraction]:
    if any(i < 0 for i in indices):
        raise OutOfDomainError("indices must be nonnegative", context={"indices": list(indices)})
    if kind == "stirling1":
        return stirling1(*indices)
    if kind == "stirling2":
        return stirling2(*indices)
    if kind == "bernoulli":
        return bernoulli(*indices)
    raise OutOfDomainError(f"unknown sequence {kind!r}", context={"choices": list(SEQUENCE_KINDS)})


def zeta_even_rational(n: int) -> Fraction:
    """zeta(2n) / pi^{2n}."""
    if n < 1:
        raise OutOfDomainError("zeta(2n) needs n >= 1")
    return (-1) ** (n + 1) * bernoulli(2 * n) * 2 ** (2 * n - 1) / factorial(2 * n)


def nonpositive_limit(n: int, k: int, order: str) -> Fraction:
    """Limit of the depth-k sum at s = (-n, 0, ..., 0) taken in the given variable order."""
    if n < 0 or k < 1:
        raise OutOfDomainError("limits need n >= 0 and k >= 1", context={"n": n, "k": k})
    if order == "s1_first":
        total = sum(
            Fraction((-1) ** (k + j) * factorial(j) * stirling2(n + 1, j), k + j)
            for j in range(n + 2)
        )
        return Fraction((-1) ** (n + 1), n + 1) * total
    if order == "sk_first":
        total = sum(
            stirling1(k, j) * bernoulli(n + j) / (n + j)
            for j in range(1, k + 1)
        )
        delta = (-1) ** k if n == 0 else 0
        return delta - total / factorial(k - 1)
    raise OutOfDomainError(f"unknown limit order {order!r}", context={"choices": list(LIMIT_ORDERS)})


def zeta_at_nonpositive(n: int) -> Fraction:
    """zeta(-n) = (-1)^n B_{n+1} / (n+1)."""
    return (-1) ** n * bernoulli(n + 1) / (n + 1)


def stuffle_table(size: int) -> Dict[Tuple[int, int], int]:
    return {(m, n): stuffle_count(m, n) for m in range(size + 1) for n in range(size + 1)}
