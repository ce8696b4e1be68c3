# app/services/combinatorics/dimensions.py
"""Exponents E(n, k) with prod (1 - x^n y^k)^{E(n,k)} equal to a conjectured right-hand side.

Series are dicts {(i, j): coefficient} truncated at x-degree <= max_weight and
y-degree <= max_depth.
"""
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Tuple, Union

from app.core.errors import OutOfDomainError

Series = Dict[Tuple[int, int], Fraction]
Bounds = Tuple[int, int]

DIMENSION_TARGETS = ("mzv_basis", "mzv_via_euler", "euler_basis", "clausen")


def _trim(s: Series, bounds: Bounds) -> Series:
    return {k: v for k, v in s.items() if v and k[0] <= bounds[0] and k[1] <= bounds[1]}


def _mul(a: Series, b: Series, bounds: Bounds) -> Series:
    out: Series = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if i <= bounds[0] and j <= bounds[1]:
                out[(i, j)] = out.get((i, j), Fraction(0)) + c1 * c2
    return _trim(out, bounds)


def _add(a: Series, b: Series, bounds: Bounds, sign: int = 1) -> Series:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + sign * v
    return _trim(out, bounds)


def _monomial(i: int, j: int, c=1) -> Series:
    return {(i, j): Fraction(c)}


def _geometric(i: int, j: int, bounds: Bounds) -> Series:
    """1 / (1 - x^i y^j)."""
    out: Series = {}
    n = 0
    while n * i <= bounds[0] and n * j <= bounds[1]:
        out[(n * i, n * j)] = Fraction(1)
        n += 1
        if i == 0 and j == 0:
            break
    return out


def _mzv_basis(bounds: Bounds) -> Series:
    one = _monomial(0, 0)
    first = _mul(_monomial(3, 1), _geometric(2, 0, bounds), bounds)
    second = _mul(_monomial(12, 2), _add(one, _monomial(0, 2), bounds, -1), bounds)
    second = _mul(second, _mul(_geometric(4, 0, bounds), _geometric(6, 0, bounds), bounds), bounds)
    return _add(_add(one, first, bounds, -1), second, bounds)


def _mzv_via_euler(bounds: Bounds) -> Series:
    tail = _mul(_monomial(3, 1), _mul(_geometric(2, 0, bounds), _geometric(1, 1, bounds), bounds), bounds)
    return _add(_monomial(0, 0), tail, bounds, -1)


def _euler_basis(bounds: Bounds) -> Series:
    tail = _mul(_monomial(3, 1), _geometric(2, 0, bounds), bounds)
    return _add(_monomial(0, 0), tail, bounds, -1)


def _clausen(bounds: Bounds) -> Series:
    tail = _mul(_monomial(2, 1), _geometric(1, 0, bounds), bounds)
    return _add(_monomial(0, 0), tail, bounds, -1)


_TARGETS: Dict[str, Callable[[Bounds], Series]] = {
    "mzv_basis": _mzv_basis,
    "mzv_via_euler": _mzv_via_euler,
    "euler_basis": _euler_basis,
    "clausen": _clausen,
}


def rhs_series(target: str, max_weight: int, max_depth: int) -> Series:
    if target not in _TARGETS:
        raise OutOfDomainError(f"unknown dimension target {target!r}", context={"choices": list(DIMENSION_TARGETS)})
    if max_weight < 1 or max_depth < 1:
        raise OutOfDomainError("bounds must be >= 1")
    return _TARGETS[target]((max_weight, max_depth))


def log_series(r: Series, bounds: Bounds) -> Series:
    """log(1 + T) with T = r - 1, T without constant term."""
    t = _add(r, _monomial(0, 0), bounds, -1)
    if (0, 0) in t:
        raise OutOfDomainError("series must have constant term 1")
    out: Series = {}
    power = _monomial(0, 0)
    k = 1
    while True:
        power = _mul(power, t, bounds)
        if not power:
            break
        for key, v in power.items():
            out[key] = out.get(key, Fraction(0)) + Fraction((-1) ** (k + 1), k) * v
        k += 1
    return _trim(out, bounds)


def dimension_exponents(target: str, max_weight: int, max_depth: int) -> Dict[Tuple[int, int], Union[int, Fraction]]:
    bounds = (max_weight, max_depth)
    logs = log_series(rhs_series(target, max_weight, max_depth), bounds)
    exps: Dict[Tuple[int, int], Fraction] = {}
    for n in range(1, max_weight + 1):
        for k in range(1, max_depth + 1):
            value = -logs.get((n, k), Fraction(0))
            for d in range(2, gcd(n, k) + 1):
                if n % d == 0 and k % d == 0:
                    value -= exps[(n // d, k // d)] / d
            exps[(n, k)] = value
    return {key: int(v) if v.denominator == 1 else v for key, v in exps.items()}


def table_rows(table: Dict[Tuple[int, int], Union[int, Fraction]]) -> List[Dict[str, Union[int, str]]]:
    return [
        {"n": n, "k": k, "value": v if isinstance(v, int) else str(v)}
        for (n, k), v in sorted(table.items())
    ]


def format_table(table: Dict[Tuple[int, int], Union[int, Fraction]], max_weight: int, max_depth: int) -> str:
    """Aligned grid: one row per weight n, one column per depth k."""
    header = ["n\\k"] + [str(k) for k in range(1, max_depth + 1)]
    rows = [header]
    for n in range(1, max_weight + 1):
        rows.append([str(n)] + [str(table.get((n, k), 0)) for k in range(1, max_depth + 1)])
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "\n".join(" ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows)
