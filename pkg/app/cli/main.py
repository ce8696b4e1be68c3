# app/cli/main.py
"""`mzv` command-line front end.

Exit status: 0 on success or when every check passes, 1 when a check fails,
2 on a usage, parse or domain error.
"""
import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from app.core.config import get_settings
from app.core.dependencies.services import get_check_registry
from app.core.errors import AppError, DivergentError, ParseError
from app.models.ball import ComplexBall
from app.models.check import SuiteReport
from app.services.combinatorics.combinatorics import (
    LIMIT_ORDERS,
    SEQUENCE_KINDS,
    lattice_point_count,
    nonpositive_limit,
    special_sequences,
    stuffle_count,
    stuffle_table,
    tau_factorizations,
)
from app.services.combinatorics.dimensions import (
    DIMENSION_TARGETS,
    dimension_exponents,
    format_table,
    rhs_series,
    table_rows,
)
from app.services.numerics.euler_sums import euler_sum_value, multiple_polylog_eval
from app.services.numerics.precision import working_bits
from app.services.suite.checks.generating_functions import FAMILIES, NAME as GF_CHECK
from app.services.suite.runner import SuiteRunner
from app.services.words.parsing import (
    format_poly,
    format_word,
    parse_complex,
    parse_composition,
    parse_rational,
    parse_signed_composition,
    parse_word,
)
from app.services.words.word_algebra import dual_composition, format_multiset, qshuffle, shuffle, stuffle

logger = logging.getLogger(__name__)

_NEGATIVE = re.compile(r"^-\d")

TABLE_TARGETS = ("stuffle", "tau", "limits")


def _shield_negative_arguments(argv: Sequence[str]) -> List[str]:
    """Barred arguments are written as negative integers; keep argparse from reading `-1,1` as a flag."""
    return [f" {token}" if _NEGATIVE.match(token) else token for token in argv]


def _key_values(tokens: Sequence[str]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.strip().partition("=")
        if not sep or not key:
            raise ParseError(f"expected key=value, got {token.strip()!r}")
        params[key] = value
    return params


def _emit(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def _print_report(report: SuiteReport, as_json: bool) -> int:
    print(report.to_json_lines() if as_json else report.to_table())
    return report.exit_code


def _grid(rows: List[List[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join(" ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in rows)


# Subcommands


def cmd_eval(args: argparse.Namespace) -> int:
    argument = parse_signed_composition(args.composition, parse_rational(args.x))
    value = euler_sum_value(argument, digits=args.prec)
    if args.json:
        _emit({"argument": argument.to_text(), "x": str(argument.x), **value.to_json()})
    else:
        print(value.to_string(args.prec))
    return 0


def cmd_li(args: argparse.Namespace) -> int:
    s = parse_composition(args.indices)
    bits = working_bits(args.prec)
    z = [ComplexBall.exact(*parse_complex(text), prec=bits) for text in args.z]
    value = multiple_polylog_eval(s.parts, z, digits=args.prec)
    if args.json:
        _emit({"s": s.to_text(), "z": [text.strip() for text in args.z], **value.to_json()})
    else:
        print(value.to_string(args.prec))
    return 0


def cmd_product(args: argparse.Namespace) -> int:
    if args.type == "stuffle":
        u, v = parse_composition(args.left), parse_composition(args.right)
        counts = stuffle(u, v)
        if args.json:
            _emit({"type": args.type, "terms": [{"composition": c.to_text(), "count": n}
                                                for c, n in sorted(counts.items(), key=lambda t: t[0].parts)]})
        else:
            print(format_multiset(counts))
        return 0
    u, v = parse_word(args.left), parse_word(args.right)
    poly = shuffle(u, v) if args.type == "shuffle" else qshuffle(u, v)
    if args.json:
        _emit({"type": args.type, "terms": [{"word": format_word(w), "coefficient": str(c)} for w, c in poly]})
    else:
        print(format_poly(poly))
    return 0


def cmd_dual(args: argparse.Namespace) -> int:
    s = parse_composition(args.composition)
    dual = dual_composition(s)
    if args.json:
        _emit({"composition": s.to_text(), "dual": dual.to_text()})
    else:
        print(dual)
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    if args.stuffle:
        m, n = args.stuffle
        value: Any = stuffle_count(m, n)
        label = f"f({m},{n})"
    elif args.lattice:
        m, n = args.lattice
        value = lattice_point_count(m, n)
        label = f"lattice({m},{n})"
    elif args.tau:
        m, k = args.tau
        value = tau_factorizations(m, k)
        label = f"tau_{k}({m})"
    elif args.limit:
        n, k = args.limit
        value = {order: str(nonpositive_limit(n, k, order)) for order in LIMIT_ORDERS}
        label = f"limit(-{n},{{0}}^{k - 1})"
    else:
        kind, *indices = args.sequence
        if kind not in SEQUENCE_KINDS:
            raise ParseError(f"unknown sequence {kind!r}", context={"choices": list(SEQUENCE_KINDS)})
        try:
            value = special_sequences(kind, [int(i) for i in indices])
        except (TypeError, ValueError) as e:
            raise ParseError(f"{kind} needs integer indices, got {indices}", cause=e)
        label = f"{kind}({','.join(indices)})"
    if args.json:
        _emit({"count": label, "value": value if isinstance(value, (int, dict)) else str(value)})
    elif isinstance(value, dict):
        print(" ".join(f"{order}={v}" for order, v in value.items()))
    else:
        print(value)
    return 0


def cmd_dims(args: argparse.Namespace) -> int:
    if args.series:
        series = rhs_series(args.target, args.max_weight, args.max_depth)
        table: Dict = {key: v if v.denominator != 1 else int(v) for key, v in series.items() if key != (0, 0)}
    else:
        table = dimension_exponents(args.target, args.max_weight, args.max_depth)
    if args.json:
        _emit({"target": args.target, "series": args.series, "rows": table_rows(table)})
    else:
        print(format_table(table, args.max_weight, args.max_depth))
    return 0


def _with_flags(params: Dict[str, str], args: argparse.Namespace) -> Dict[str, str]:
    """--x, --q and --trunc fill in x, q and N unless given as key=value."""
    merged = dict(params)
    if args.x_given:
        merged.setdefault("x", args.x)
    if args.q is not None:
        merged.setdefault("q", args.q)
    if args.trunc is not None:
        merged.setdefault("N", str(args.trunc))
    return merged


def _runner(args: argparse.Namespace) -> SuiteRunner:
    return SuiteRunner(get_check_registry(), digits=args.prec, jobs=getattr(args, "jobs", None))


def cmd_gf(args: argparse.Namespace) -> int:
    params = _with_flags(_key_values(args.params), args)
    params["family"] = args.family
    report = _runner(args).run_one(GF_CHECK, params, args.tol)
    return _print_report(report, args.json)


def cmd_verify(args: argparse.Namespace) -> int:
    get_check_registry().get_check_by_name(args.check)
    params = _with_flags(_key_values(args.params), args)
    report = _runner(args).run_one(args.check, params, args.tol)
    return _print_report(report, args.json)


def cmd_suite(args: argparse.Namespace) -> int:
    report = _runner(args).run_config(args.config)
    return _print_report(report, args.json)


def cmd_tables(args: argparse.Namespace) -> int:
    size = args.size
    if args.target == "stuffle":
        table = stuffle_table(size)
        if args.json:
            _emit({"target": "stuffle", "rows": [{"m": m, "n": n, "value": v} for (m, n), v in sorted(table.items())]})
        else:
            rows = [["m\\n"] + [str(n) for n in range(size + 1)]]
            rows += [[str(m)] + [str(table[(m, n)]) for n in range(size + 1)] for m in range(size + 1)]
            print(_grid(rows))
    elif args.target == "tau":
        depth = 4
        values = {(m, k): tau_factorizations(m, k) for m in range(1, size + 1) for k in range(1, depth + 1)}
        if args.json:
            _emit({"target": "tau", "rows": [{"m": m, "k": k, "value": v} for (m, k), v in sorted(values.items())]})
        else:
            rows = [["m\\k"] + [str(k) for k in range(1, depth + 1)]]
            rows += [[str(m)] + [str(values[(m, k)]) for k in range(1, depth + 1)] for m in range(1, size + 1)]
            print(_grid(rows))
    else:
        values = {
            (n, k, order): nonpositive_limit(n, k, order)
            for n in range(size + 1)
            for k in range(1, 4)
            for order in LIMIT_ORDERS
        }
        if args.json:
            _emit({"target": "limits", "rows": [{"n": n, "k": k, "order": o, "value": str(v)}
                                                for (n, k, o), v in sorted(values.items())]})
        else:
            rows = [["n", "k"] + list(LIMIT_ORDERS)]
            rows += [
                [str(n), str(k)] + [str(values[(n, k, o)]) for o in LIMIT_ORDERS]
                for n in range(size + 1)
                for k in range(1, 4)
            ]
            print(_grid(rows))
    return 0


# Parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=_positive_int, default=settings.PRECISION_DIGITS,
                        help="decimal digits (default %(default)s)")
    common.add_argument("--x", default=None, help="rational evaluation point in [0, 1]")
    common.add_argument("--q", default=None, help="rational q in (0, 1) for q-analog checks")
    common.add_argument("--trunc", type=_positive_int, default=None, help="truncation order N")
    common.add_argument("--tol", type=float, default=None, help="override the default tolerance")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="mzv",
        description="Word algebra, high-precision multiple zeta values and identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate zeta_x of a signed composition")
    p.add_argument("composition", help="e.g. 3,1 or -1,1 (negative entries are barred)")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("li", parents=[common], help="evaluate a multiple polylogarithm")
    p.add_argument("indices", help="comma-separated positive integers")
    p.add_argument("z", nargs="+", help="one complex rational per index, e.g. 1/2 or 1/3+1/4i")
    p.set_defaults(handler=cmd_li)

    p = sub.add_parser("product", parents=[common], help="expand a shuffle, stuffle or q-shuffle product")
    p.add_argument("--type", choices=("shuffle", "stuffle", "qshuffle"), required=True)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_product)

    p = sub.add_parser("dual", parents=[common], help="dual composition")
    p.add_argument("composition")
    p.set_defaults(handler=cmd_dual)

    p = sub.add_parser("count", parents=[common], help="exact counts and sequences")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--stuffle", nargs=2, type=int, metavar=("M", "N"), help="|u * v| for depths m and n")
    group.add_argument("--lattice", nargs=2, type=int, metavar=("M", "N"), help="lattice points with sum |b_j| <= n")
    group.add_argument("--tau", nargs=2, type=int, metavar=("M", "K"), help="unordered factorizations of m into k parts")
    group.add_argument("--limit", nargs=2, type=int, metavar=("N", "K"), help="limits at (-n, 0, ..., 0)")
    group.add_argument("--sequence", nargs="+", metavar="KIND", help=f"one of {', '.join(SEQUENCE_KINDS)} then indices")
    p.set_defaults(handler=cmd_count)

    p = sub.add_parser("dims", parents=[common], help="dimension-conjecture exponent tables")
    p.add_argument("--target", choices=DIMENSION_TARGETS, required=True)
    p.add_argument("--max-weight", type=_positive_int, default=12)
    p.add_argument("--max-depth", type=_positive_int, default=4)
    p.add_argument("--series", action="store_true", help="print the right-hand side coefficients instead")
    p.set_defaults(handler=cmd_dims)

    p = sub.add_parser("gf", parents=[common], help="check a generating function family")
    p.add_argument("--family", choices=sorted(FAMILIES), required=True)
    p.add_argument("params", nargs="*", help="key=value overrides")
    p.set_defaults(handler=cmd_gf)

    p = sub.add_parser("verify", parents=[common], help="run one identity check")
    p.add_argument("check", help="check name, e.g. duality")
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("suite", parents=[common], help="run the verification suite")
    p.add_argument("--config", type=Path, default=None, help="suite configuration (default: bundled)")
    p.add_argument("--jobs", type=_positive_int, default=settings.SUITE_JOBS)
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("tables", parents=[common], help="exact stuffle, factorization and limit tables")
    p.add_argument("--target", choices=TABLE_TARGETS, required=True)
    p.add_argument("--size", type=_positive_int, default=8)
    p.set_defaults(handler=cmd_tables)

    return parser


def _diagnostic(error: AppError) -> str:
    if isinstance(error, DivergentError):
        return f"divergent: {error.message}"
    where = []
    for key in ("line", "position"):
        if key in error.context:
            where.append(f"{key} {error.context[key]}")
    suffix = f" ({', '.join(where)})" if where else ""
    return f"error: {error.message}{suffix}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    settings.setup_logging()

    parser = build_parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_shield_negative_arguments(raw))
    args.x_given = args.x is not None
    if args.x is None:
        args.x = settings.DEFAULT_X

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except AppError as e:
        logger.debug("%s failed: %s %s", args.command, e.code, e.context)
        print(_diagnostic(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
