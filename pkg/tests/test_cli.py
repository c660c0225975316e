"""CLI contract: formats round-trip, exit codes hold, output is stable."""

import csv
import io
import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

import degenbell.cli as climod
from degenbell.cli import main
from degenbell.core import (
    lambda_poly_from_ascii,
    parse_rational,
    xpoly_from_ascii,
)
from degenbell.identities import FamilyTables
from degenbell.numbers import (
    bell_deg,
    bernoulli_deg,
    bracket_deg,
    stirling1_deg,
    stirling2_deg,
)
from degenbell.series import e_lambda_series, log_lambda_series, series_from_json


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    result = runner.invoke(main, list(args), catch_exceptions=False, **kwargs)
    return result


# ----------------------------------------------------------------------
# table
# ----------------------------------------------------------------------

def test_table_stirling2_csv_round_trips(runner):
    result = invoke(runner, "table", "stirling2", "--n-max", "5", "--format", "csv")
    assert result.exit_code == 0
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0] == ["n", "k", "value"]
    for n_str, k_str, value in rows[1:]:
        parsed = lambda_poly_from_ascii(value)
        assert parsed == stirling2_deg(int(n_str), int(k_str))


def test_table_known_rows_appear(runner):
    out = invoke(runner, "table", "bell", "--n-max", "3", "--format", "csv").output
    assert "3,,2*lambda^2 - 6*lambda + 5" in out
    out = invoke(
        runner, "table", "stirling2", "--n-max", "2", "--lambda", "1/2", "--format", "csv"
    ).output
    assert "2,1,1/2" in out
    out = invoke(runner, "table", "bernoulli", "--n-max", "0", "--format", "csv").output
    assert out.splitlines()[1] == "0,,1"


def test_table_numeric_lambda_csv_round_trips(runner):
    result = invoke(
        runner, "table", "bracket", "--n-max", "6", "--lambda", "2/3", "--format", "csv"
    )
    for n_str, k_str, value in list(csv.reader(io.StringIO(result.output)))[1:]:
        assert parse_rational(value) == bracket_deg(int(n_str), int(k_str)).eval(
            Fraction(2, 3)
        )


def test_table_json_round_trips(runner):
    result = invoke(runner, "table", "stirling1", "--n-max", "5", "--format", "json")
    payload = json.loads(result.output)
    assert payload["family"] == "stirling1"
    assert payload["lambda"] == "sym"
    for entry in payload["entries"]:
        assert lambda_poly_from_ascii(entry["value"]) == stirling1_deg(
            entry["n"], entry["k"]
        )


def test_table_linear_families_leave_k_null(runner):
    payload = json.loads(
        invoke(runner, "table", "bernoulli", "--n-max", "4", "--format", "json").output
    )
    for entry in payload["entries"]:
        assert entry["k"] is None
        assert lambda_poly_from_ascii(entry["value"]) == bernoulli_deg(entry["n"])


def test_table_pretty_uses_unicode(runner):
    out = invoke(runner, "table", "bell", "--n-max", "3").output
    assert "bell(3) = 2λ² - 6λ + 5" in out


def test_table_rejects_unknown_family_and_float_lambda(runner):
    assert invoke(runner, "table", "nosuch").exit_code == 2
    assert invoke(runner, "table", "bell", "--lambda", "0.5").exit_code == 2
    assert invoke(runner, "table", "bell", "--n-max", "-1").exit_code == 2


# ----------------------------------------------------------------------
# eval
# ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "args,expected",
    [
        (("2", "--x", "1", "--lambda", "1/2"), "3/2"),
        (("3", "--x", "1", "--lambda", "1/3"), "29/9"),
        (("1", "--x", "5", "--lambda", "99/7"), "5"),
    ],
)
def test_eval_known_values(runner, args, expected):
    result = invoke(runner, "eval", *args)
    assert result.exit_code == 0
    assert result.output.strip() == expected


def test_eval_json_round_trips(runner):
    payload = json.loads(
        invoke(
            runner, "eval", "4", "--x", "3/2", "--lambda", "1/4", "--format", "json"
        ).output
    )
    value = parse_rational(payload["value"])
    assert value == bell_deg(4).eval(Fraction(3, 2), Fraction(1, 4))


def test_eval_dobinski_prints_both(runner):
    result = invoke(
        runner, "eval", "5", "--x", "2", "--lambda", "1/2", "--dobinski-terms", "60"
    )
    lines = result.output.splitlines()
    assert len(lines) == 2
    exact = parse_rational(lines[0])
    approx = float(lines[1].split("≈")[1])
    assert abs(float(exact) - approx) < 1e-9


def test_eval_dobinski_json_field(runner):
    payload = json.loads(
        invoke(
            runner, "eval", "5", "--x", "2", "--lambda", "1/2",
            "--dobinski-terms", "60", "--format", "json",
        ).output
    )
    assert payload["dobinski_terms"] == 60
    assert abs(payload["dobinski"] - float(parse_rational(payload["value"]))) < 1e-9


def test_eval_rejects_bad_input(runner):
    assert invoke(runner, "eval", "2", "--x", "1", "--lambda", "0.5").exit_code == 2
    assert invoke(runner, "eval", "-3", "--lambda", "1/2").exit_code == 2
    assert invoke(runner, "eval", "2", "--lambda", "1/2", "--x", "1e3").exit_code == 2
    # Dobinski needs a positive evaluation point
    assert (
        invoke(
            runner, "eval", "2", "--x", "-1", "--lambda", "0", "--dobinski-terms", "9"
        ).exit_code
        == 2
    )


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def test_verify_single_identity_passes(runner):
    result = invoke(runner, "verify", "eq39", "--n-max", "8")
    assert result.exit_code == 0
    assert result.output.startswith("PASS")


def test_verify_all_small_grid(runner):
    result = invoke(runner, "verify", "all", "--n-max", "2")
    assert result.exit_code == 0
    lines = [l for l in result.output.splitlines() if l.startswith("PASS")]
    assert len(lines) == 29


def test_verify_unknown_identity_exits_2(runner):
    result = invoke(runner, "verify", "nosuch")
    assert result.exit_code == 2
    assert "valid keys" in result.output


def test_verify_csv_and_json_agree(runner):
    as_json = json.loads(
        invoke(runner, "verify", "eq61", "--n-max", "4", "--format", "json").output
    )
    as_csv = list(
        csv.reader(
            io.StringIO(
                invoke(
                    runner, "verify", "eq61", "--n-max", "4", "--format", "csv"
                ).output
            )
        )
    )
    assert as_csv[0] == ["identity", "grid", "status", "params", "lhs", "rhs"]
    assert as_csv[1][0] == as_json[0]["identity"] == "eq61"
    assert as_csv[1][2] == as_json[0]["status"] == "pass"


def test_verify_failure_exits_1_with_counterexample(runner, monkeypatch):
    real = climod.verify_all

    def broken(n_max, order):
        return real(n_max, order, FamilyTables.with_bump(3, 2))

    monkeypatch.setattr(climod, "verify_all", broken)
    result = runner.invoke(main, ["verify", "all", "--n-max", "4"])
    assert result.exit_code == 1
    assert "FAIL" in result.output
    assert "lhs:" in result.output and "rhs:" in result.output


def test_verify_respects_env_order_cap(runner):
    result = invoke(
        runner, "verify", "eq59", "--n-max", "4",
        env={"DEGENBELL_MAX_ORDER": "6"},
    )
    assert result.exit_code == 0
    assert "order 6" in result.output


# ----------------------------------------------------------------------
# series
# ----------------------------------------------------------------------

def test_series_pretty_known_prefix(runner):
    out = invoke(runner, "series", "loglam", "--order", "2").output.strip()
    assert out == "t + (λ - 1)·t²/2!"
    out = invoke(runner, "series", "elam", "--order", "0").output.strip()
    assert out == "1"


def test_series_json_round_trips(runner):
    result = invoke(runner, "series", "loglam", "--order", "6", "--format", "json")
    assert series_from_json(result.output) == log_lambda_series(6)
    result = invoke(runner, "series", "elam", "--order", "5", "--format", "json")
    assert series_from_json(result.output) == e_lambda_series(1, 5)


def test_series_csv_round_trips(runner):
    result = invoke(runner, "series", "bellgf", "--order", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0] == ["n", "value"]
    from degenbell.series import Series, series_exp
    from degenbell.core import XP_X

    gf = series_exp((e_lambda_series(1, 5) - Series.one(5)).scale(XP_X))
    for n_str, value in rows[1:]:
        assert xpoly_from_ascii(value) == gf.coeff(int(n_str))


def test_series_env_cap_applies_to_default_order_only(runner):
    capped = invoke(runner, "series", "elam", env={"DEGENBELL_MAX_ORDER": "4"})
    assert "t⁴" in capped.output and "t⁵" not in capped.output
    explicit = invoke(
        runner, "series", "elam", "--order", "6", env={"DEGENBELL_MAX_ORDER": "4"}
    )
    assert "t⁶" in explicit.output


def test_series_rejects_unknown_name(runner):
    assert invoke(runner, "series", "nosuch").exit_code == 2


def test_bad_env_cap_is_a_usage_error(runner):
    result = invoke(runner, "series", "elam", env={"DEGENBELL_MAX_ORDER": "many"})
    assert result.exit_code == 2


# ----------------------------------------------------------------------
# determinism
# ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "args",
    [
        ("table", "stirling2", "--n-max", "6", "--format", "csv"),
        ("table", "bell", "--n-max", "6", "--format", "json"),
        ("eval", "7", "--x", "2/3", "--lambda", "1/5", "--format", "json"),
        ("verify", "eq43", "--n-max", "5", "--format", "json"),
        ("series", "bellgf", "--order", "6", "--format", "csv"),
    ],
)
def test_repeated_runs_are_byte_identical(runner, args):
    first = invoke(runner, *args).output
    second = invoke(runner, *args).output
    assert first == second
