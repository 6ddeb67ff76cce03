"""Tests for utils/datafile.py: sample file parsing and error messages."""
import pytest

from confint.utils.datafile import parse_values, read_sample
from confint.utils.errors import InputDataError


# ── parse_values ─────────────────────────────────────────────────────

def test_parse_skips_comments_and_blank_lines():
    text = "# observations\n1.5\n\n   \n  -2e-3  \n# end\n"
    assert parse_values(text) == [1.5, -0.002]


def test_parse_bad_line_reports_line_number():
    with pytest.raises(InputDataError, match=r"data\.txt: line 3: not a number: 'abc'"):
        parse_values("1\n2\nabc\n", "data.txt")


def test_parse_inline_comment_is_not_a_number():
    with pytest.raises(InputDataError, match="line 1"):
        parse_values("1.0 # first\n")


@pytest.mark.parametrize("token", ["nan", "inf", "-inf"])
def test_parse_rejects_non_finite(token):
    with pytest.raises(InputDataError, match="value is not finite"):
        parse_values(f"1\n{token}\n")


def test_parse_empty_text():
    assert parse_values("") == []


# ── read_sample ──────────────────────────────────────────────────────

def test_read_sample(data_file):
    sample = read_sample(data_file(["0.5", "1.5", "2.5"]))
    assert sample.n == 3
    assert sample.mean == 1.5


def test_read_sample_crlf(data_file):
    sample = read_sample(data_file(["1", "# note", "3"], newline="\r\n"))
    assert sample.values == (1.0, 3.0)


def test_read_sample_missing(tmp_path):
    with pytest.raises(InputDataError, match="no such file"):
        read_sample(tmp_path / "missing.txt")


def test_read_sample_only_comments(data_file):
    with pytest.raises(InputDataError, match="no numeric values found"):
        read_sample(data_file(["# a", "", "# b"]))


def test_read_sample_not_utf8(tmp_path):
    path = tmp_path / "bin.dat"
    path.write_bytes(b"\xff\xfe\x00\x81")
    with pytest.raises(InputDataError, match="cannot read file"):
        read_sample(path)


def test_read_sample_directory(tmp_path):
    with pytest.raises(InputDataError):
        read_sample(tmp_path)
