import json

import pytest

from app.cli.main import build_parser, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


# eval / li


def test_eval_prints_enclosure(capsys):
    code, out, _ = run_cli(capsys, "eval", "2,1", "--prec", "20")
    assert code == 0
    assert out.startswith("1.2020569031595942854")
    assert " ± " in out


def test_eval_barred_argument(capsys):
    code, out, _ = run_cli(capsys, "eval", "-1", "--prec", "20")
    assert code == 0
    assert out.startswith("-0.6931471805599453094")


def test_eval_partial_point_json(capsys):
    code, out, _ = run_cli(capsys, "eval", "1", "--x", "1/2", "--prec", "20", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["argument"] == "1"
    assert data["x"] == "1/2"
    assert data["mid"].startswith("0.6931471805599453094")
    assert data["rigorous"] is True


def test_eval_divergent(capsys):
    code, out, err = run_cli(capsys, "eval", "1,1", "--x", "1")
    assert code == 2
    assert out == ""
    assert err == "divergent: x=s1=σ1=1 excluded"


def test_eval_parse_error_reports_position(capsys):
    code, _, err = run_cli(capsys, "eval", "3,x")
    assert code == 2
    assert err.startswith("error:")
    assert "position" in err


def test_li_dilogarithm(capsys):
    code, out, _ = run_cli(capsys, "li", "2", "1/2", "--prec", "20")
    assert code == 0
    assert out.startswith("0.5822405264650125059")


def test_li_complex_argument(capsys):
    code, out, _ = run_cli(capsys, "li", "2", "1/3+1/4i", "--prec", "15")
    assert code == 0
    assert out.startswith("(") and out.endswith("i")


# Words and counts


def test_product_stuffle(capsys):
    code, out, _ = run_cli(capsys, "product", "--type", "stuffle", "2", "3")
    assert code == 0
    assert out == "(2,3) + (3,2) + (5)"


def test_product_shuffle(capsys):
    code, out, _ = run_cli(capsys, "product", "--type", "shuffle", "ab", "b")
    assert code == 0
    assert "2*abb" in out and "bab" in out


def test_product_qshuffle_json(capsys):
    code, out, _ = run_cli(capsys, "product", "--type", "qshuffle", "a", "b", "--json")
    assert code == 0
    words = {t["word"] for t in json.loads(out)["terms"]}
    assert words == {"ab", "ba[1]"}


def test_dual(capsys):
    code, out, _ = run_cli(capsys, "dual", "3")
    assert code == 0
    assert out == "(2,1)"


def test_dual_of_inadmissible_composition(capsys):
    code, _, err = run_cli(capsys, "dual", "1,2")
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("argv,expected", [
    (["--stuffle", "2", "2"], "13"),
    (["--lattice", "2", "2"], "13"),
    (["--tau", "12", "2"], "3"),
    (["--sequence", "bernoulli", "2"], "1/6"),
    (["--sequence", "stirling1", "3", "2"], "-3"),
    (["--limit", "0", "2"], "s1_first=1/3 sk_first=5/12"),
])
def test_count(capsys, argv, expected):
    code, out, _ = run_cli(capsys, "count", *argv)
    assert code == 0
    assert out == expected


def test_count_json(capsys):
    code, out, _ = run_cli(capsys, "count", "--stuffle", "2", "1", "--json")
    assert code == 0
    assert json.loads(out) == {"count": "f(2,1)", "value": 5}


def test_count_unknown_sequence(capsys):
    code, _, err = run_cli(capsys, "count", "--sequence", "catalan", "3")
    assert code == 2
    assert "unknown sequence" in err


def test_dims_table(capsys):
    code, out, _ = run_cli(capsys, "dims", "--target", "mzv_basis", "--max-weight", "5", "--max-depth", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["n\\k", "1"]
    assert lines[3].split() == ["3", "1"]
    assert lines[5].split() == ["5", "1"]


def test_tables_stuffle(capsys):
    code, out, _ = run_cli(capsys, "tables", "--target", "stuffle", "--size", "2")
    assert code == 0
    assert out.splitlines()[-1].split() == ["2", "1", "5", "13"]


# Checks


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "sum_formula", "n=4", "k=2", "--prec", "20")
    assert code == 0
    assert out.endswith("1/1 checks passed")


def test_verify_json_lines(capsys):
    code, out, _ = run_cli(capsys, "verify", "counts", "kind=limits", "--json")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert all(r["pass"] for r in records)
    assert {r["name"] for r in records} == {"counts"}


def test_verify_failure_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "sum_formula", "n=2", "k=3")
    assert code == 1
    assert "FAIL" in out


def test_verify_unknown_check(capsys):
    code, _, err = run_cli(capsys, "verify", "goldbach")
    assert code == 2
    assert "unknown check" in err


def test_verify_bad_parameter(capsys):
    code, _, err = run_cli(capsys, "verify", "duality", "max_weight")
    assert code == 2
    assert "key=value" in err


def test_gf_flags_fill_parameters(capsys):
    code, out, _ = run_cli(capsys, "gf", "--family", "sincs", "n=1", "t=1/2", "--prec", "20", "--json")
    assert code == 0
    record = json.loads(out.splitlines()[0])
    assert record["params"]["family"] == "sincs"


def test_suite_with_config(capsys, tmp_path):
    config = tmp_path / "small.conf"
    config.write_text("counts kind=limits\nsum_formula n=3 k=1..2\n")
    code, out, _ = run_cli(capsys, "suite", "--config", str(config), "--prec", "20")
    assert code == 0
    assert out.endswith("4/4 checks passed")


def test_suite_config_error(capsys, tmp_path):
    config = tmp_path / "bad.conf"
    config.write_text("counts kind=limits\nnot_a_check\n")
    code, _, err = run_cli(capsys, "suite", "--config", str(config))
    assert code == 2
    assert "line 2" in err


def test_usage_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["eval"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["product", "--type", "concat", "a", "b"])


def test_parser_subcommands():
    parser = build_parser()
    args = parser.parse_args(["suite", "--jobs", "2"])
    assert args.jobs == 2
    assert args.config is None
