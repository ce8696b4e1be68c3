import json
from fractions import Fraction

import pytest

from app.core.dependencies.services import get_check_registry
from app.core.errors import NotFoundError, ParseError
from app.models.ball import Ball
from app.models.check import CheckResult, SuiteReport
from app.services.suite.checks.generating_functions import FAMILIES
from app.services.suite.checks.results import forms_param, int_param, numeric_result
from app.services.suite.runner import (
    DEFAULT_CONFIG,
    SuiteRunner,
    SuiteTask,
    execute_task,
    load_config,
    param_text,
    parse_config,
)
from tests.conftest import TEST_DIGITS

CHECKS = [
    "counts",
    "cyclic_insertion",
    "cyclic_sum",
    "double_shuffle",
    "duality",
    "generating_function",
    "new_integral",
    "ohno",
    "q_expansions",
    "q_limit",
    "q_shuffle",
    "reduction",
    "shuffle_theorems",
    "sum_formula",
]


@pytest.fixture
def registry():
    return get_check_registry()


@pytest.fixture
def runner(registry):
    return SuiteRunner(registry=registry, digits=TEST_DIGITS, jobs=1)


def run(runner, name, **params):
    report = runner.run_one(name, params)
    assert report.results, f"{name} produced no results"
    return report


# Registry


def test_registry_lists_every_check(registry):
    assert registry.names() == CHECKS
    described = registry.get_checks_with_descriptions()
    assert all(entry["description"] for entry in described)


def test_registry_unknown_check(registry):
    with pytest.raises(NotFoundError):
        registry.get_check_by_name("goldbach")


# Configuration


def test_parse_config_expands_ranges(registry):
    tasks = parse_config("sum_formula n=5 k=1..3  # comment\n\n# only a comment\n", registry)
    assert [t.params_dict for t in tasks] == [{"n": "5", "k": str(k)} for k in (1, 2, 3)]
    assert all(t.line == 1 for t in tasks)


def test_parse_config_takes_product_of_ranges(registry):
    tasks = parse_config("cyclic_insertion m=4..5 n=1..2 tol=1e-12", registry)
    assert len(tasks) == 4
    assert all(t.tolerance == 1e-12 for t in tasks)


@pytest.mark.parametrize("text", ["goldbach n=1", "duality max_weight", "sum_formula k=3..1", "duality tol=tight"])
def test_parse_config_errors_carry_the_line(registry, text):
    with pytest.raises(ParseError) as info:
        parse_config("duality max_weight=4\n" + text, registry)
    assert info.value.line == 2


def test_default_config_parses(registry):
    tasks = load_config(None, registry)
    assert tasks
    assert {t.name for t in tasks} == set(CHECKS)
    assert DEFAULT_CONFIG.exists()


def test_missing_config_file(registry, tmp_path):
    with pytest.raises(ParseError):
        load_config(tmp_path / "absent.conf", registry)


def test_param_helpers():
    assert param_text(True) == "true"
    assert param_text([1, 2]) == "1,2"
    assert forms_param({"forms": "a=0,b=1/2"}) == {"a": 0, "b": 0.5}
    with pytest.raises(ParseError):
        int_param({"m": "two"}, "m")


def test_numeric_result_separates_opposite_signs():
    half = Fraction(1, 2)
    result = numeric_result("sign", {}, Ball.exact(-half), Ball.exact(half), 1e-10, 10)
    assert not result.passed
    assert result.residual >= 1
    same = numeric_result("sign", {}, Ball.exact(-half), -Ball.exact(half), 1e-10, 10)
    assert same.passed
    assert same.lhs.startswith("-0.5")


# Execution


def test_errors_inside_a_check_become_failed_results(registry):
    results = execute_task(SuiteTask("sum_formula", (("k", "3"), ("n", "2"))), TEST_DIGITS, registry)
    assert len(results) == 1
    assert not results[0].passed
    assert results[0].notes.startswith("error:")


def test_report_ordering_and_exit_code(runner):
    tasks = [
        SuiteTask("sum_formula", (("k", "2"), ("n", "4"))),
        SuiteTask("counts", (("kind", "limits"),)),
    ]
    report = runner.run(tasks)
    assert [r.name for r in report.results] == sorted(r.name for r in report.results)
    assert report.all_passed
    assert report.exit_code == 0
    assert report.run_id.startswith("run_")


def test_failed_report_exit_code():
    failing = CheckResult(name="x", lhs="1", rhs="2", residual=1.0, tolerance=0.0, passed=False)
    report = SuiteReport(run_id="run_test", results=[failing])
    assert report.exit_code == 1
    line = json.loads(report.to_json_lines(include_seconds=False))
    assert line["pass"] is False
    assert "seconds" not in line
    assert report.to_table().endswith("0/1 checks passed")


# Individual checks


def test_duality(runner):
    report = run(runner, "duality", max_weight=5)
    assert report.all_passed
    assert {"s": "3", "dual": "2,1"} in [r.params for r in report.results]


def test_sum_formula(runner):
    assert run(runner, "sum_formula", n=5, k=2).all_passed


def test_ohno(runner):
    assert run(runner, "ohno", p="3", m=1).all_passed
    assert run(runner, "ohno", p="4,1", m=1).all_passed


def test_double_shuffle(runner):
    report = run(runner, "double_shuffle", u="2", v="2")
    assert len(report.results) == 2
    assert report.all_passed


def test_double_shuffle_batch(runner):
    report = run(runner, "double_shuffle", max_depth=3, max_weight=5)
    assert report.all_passed
    assert len(report.results) >= 2


def test_cyclic_insertion(runner):
    report = run(runner, "cyclic_insertion", m=3, n=1, orbits=True)
    assert report.all_passed
    assert any("orbit" in r.params for r in report.results)


def test_cyclic_insertion_at_n_zero_compares_exact_forms(runner):
    report = run(runner, "cyclic_insertion", m=2, n=0)
    assert report.all_passed
    assert any(r.params.get("route") == "exact" for r in report.results)


def test_cyclic_sum(runner):
    assert run(runner, "cyclic_sum", m=4, n=1).all_passed


@pytest.mark.parametrize("params", [
    {"which": "euler", "m": 4},
    {"which": "markett", "s": 4},
    {"which": "z31", "n": 1},
    {"which": "z313", "n": 1},
    {"which": "z213", "n": 1},
    {"which": "period1", "s": 2, "k": 3},
    {"which": "period1", "s": 3, "k": 2},
])
def test_reductions(runner, params):
    assert run(runner, "reduction", **params).all_passed


def test_unknown_reduction_is_a_failed_result(runner):
    report = run(runner, "reduction", which="z99")
    assert report.exit_code == 1


def test_new_integral(runner):
    report = run(runner, "new_integral", s="2,1")
    assert report.all_passed
    assert not report.results[0].rigorous


@pytest.mark.parametrize("family,params", [
    ("zfact", {"x": "1/2", "z": "3/10"}),
    ("z313gf", {"x": "1/2", "z": "3/10"}),
    ("mgf", {"x": "1/2", "t": "3/10"}),
    ("drin", {"max_total": 5}),
    ("period1", {"s": 4, "t": "1/2"}),
    ("sincs", {"n": 2, "t": "1/3"}),
    ("adef", {"z": "3/10"}),
])
def test_generating_functions(runner, family, params):
    assert run(runner, "generating_function", family=family, **params).all_passed


def test_generating_function_families_are_known():
    assert sorted(FAMILIES) == ["adef", "drin", "mgf", "period1", "sincs", "z313gf", "zfact"]


def test_unknown_family_is_a_failed_result(runner):
    report = run(runner, "generating_function", family="theta")
    assert not report.all_passed
    assert "unknown generating function family" in report.results[0].notes


def test_shuffle_theorems(runner):
    report = run(runner, "shuffle_theorems", m_max=3, order=8)
    assert report.all_passed
    assert len(report.results) == 5


def test_q_shuffle(runner):
    assert run(runner, "q_shuffle", u="a", v="b").all_passed
    assert run(runner, "q_shuffle", max_length=3, x="4/5", q="7/10").all_passed


def test_q_expansions(runner):
    report = run(runner, "q_expansions")
    assert len(report.results) == 3
    assert report.all_passed


def test_q_limit(runner):
    assert run(runner, "q_limit", word="ab").all_passed


@pytest.mark.parametrize("kind,params", [
    ("stuffle", {"max": 5}),
    ("tau", {"max_m": 200, "max_k": 3}),
    ("limits", {}),
])
def test_counts(runner, kind, params):
    assert run(runner, "counts", kind=kind, **params).all_passed


@pytest.mark.slow
def test_default_suite_passes(runner):
    report = runner.run_config()
    assert report.all_passed, report.to_table()
