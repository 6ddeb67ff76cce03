"""Tests for utils/output.py: JSON/CSV/text/table output routing."""
import json

import pytest

from confint.utils.output import OutputFormat, format_number, print_csv, print_json, print_output, print_text


# ── format_number ────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "value,expected",
    [
        (0.398321234, "0.398321"),
        (0.0, "0"),
        (1e-200, "1e-200"),
        (12345678.0, "1.23457e+07"),
        (1000, "1000"),
        (None, ""),
        (True, "true"),
        ("wald", "wald"),
    ],
)
def test_format_number(value, expected):
    assert format_number(value) == expected


# ── print_json ───────────────────────────────────────────────────────


def test_print_json_keeps_full_precision(capsys):
    print_json([{"lower": 0.39832112345678}])
    assert json.loads(capsys.readouterr().out) == [{"lower": 0.39832112345678}]


def test_print_json_dict(capsys):
    print_json({"key": "value"})
    assert json.loads(capsys.readouterr().out) == {"key": "value"}


# ── print_csv ────────────────────────────────────────────────────────


def test_print_csv_header_and_rows(capsys):
    print_csv([{"x": 5.0, "method": "t", "coverage": 0.9412341}], ["x", "method", "coverage"])
    assert capsys.readouterr().out == "x,method,coverage\n5,t,0.941234\n"


def test_print_csv_missing_values_are_empty(capsys):
    print_csv([{"x": 5.0, "corr_error_sigma": None}], ["x", "corr_error_sigma"])
    assert capsys.readouterr().out.splitlines()[1] == "5,"


def test_print_csv_empty(capsys):
    print_csv([])
    assert capsys.readouterr().out == ""


# ── print_text ───────────────────────────────────────────────────────


def test_print_text_no_header(capsys):
    print_text([{"method": "exact", "lower": 0.1, "upper": 0.25, "n": 4}], ["method", "lower", "upper"])
    assert capsys.readouterr().out == "exact 0.1 0.25\n"


def test_print_text_all_columns_by_default(capsys):
    print_text({"a": 1, "b": "z"})
    assert capsys.readouterr().out == "1 z\n"


# ── print_output routing ─────────────────────────────────────────────


def test_routes_json(capsys):
    print_output([{"a": 1}], OutputFormat.JSON)
    assert json.loads(capsys.readouterr().out) == [{"a": 1}]


def test_routes_csv(capsys):
    print_output([{"a": 1}], OutputFormat.CSV)
    assert capsys.readouterr().out == "a\n1\n"


def test_table_goes_to_stderr(capsys):
    print_output([{"method": "wald"}], OutputFormat.TABLE, title="Intervals")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "wald" in captured.err
