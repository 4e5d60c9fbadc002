"""Tests for the sequence file format."""

from pathlib import Path

import pytest
from readk_prg._sequences import (
    SequenceParseError,
    WrongMultiplicityError,
    format_sequence_file,
    parse_sequence_file,
    read_sequence_file,
    two_pass,
    write_sequence_file,
)


def test_parse_sequence_file():
    """Test the header and 1-based indices are parsed."""
    parsed = parse_sequence_file("3 2\n1 2 3 3 2 1\n")

    assert (parsed.n, parsed.k) == (3, 2)
    assert parsed.elems == (0, 1, 2, 2, 1, 0)
    assert parsed.as_read_k().m == 6


def test_parse_ignores_comments_and_blank_lines():
    """Test comments, blank lines and wrapped data lines."""
    text = "# reversal\n\n2 2\n1 2\n# second pass\n2 1\n"

    assert parse_sequence_file(text).elems == (0, 1, 1, 0)


@pytest.mark.parametrize(
    ("text", "line", "message"),
    [
        ("3\n1 2 3\n", 1, "expected header"),
        ("a b\n", 1, "two integers"),
        ("2 0\n", 1, "k >= 1"),
        ("2 1\n1 x\n", 2, "not an integer"),
        ("2 1\n1\n3\n", 3, "outside"),
        ("2 2\n1 2 1\n", 2, "expected 4 indices"),
        ("# nothing\n", 1, "missing header"),
    ],
)
def test_parse_errors_carry_line(text: str, line: int, message: str):
    """Test malformed files report the offending line."""
    with pytest.raises(SequenceParseError, match=message) as exc_info:
        parse_sequence_file(text, source="seq.txt")

    assert exc_info.value.line == line
    assert str(exc_info.value).startswith(f"seq.txt:{line}:")


def test_wrong_multiplicity_surfaces_on_validation():
    """Test files parse with any counts and fail only as read-k sequences."""
    parsed = parse_sequence_file("2 2\n1 1 1 2\n")

    assert parsed.counts()[0] == 3
    with pytest.raises(WrongMultiplicityError):
        parsed.as_read_k()


def test_write_and_read(tmp_path: Path):
    """Test a written sequence file reads back with its comment skipped."""
    path = tmp_path / "seq.txt"
    s = two_pass([1, 0, 2])

    write_sequence_file(path, s, comment="two-pass\nn=3")

    assert path.read_text().startswith("# two-pass\n# n=3\n3 2\n")
    assert read_sequence_file(path).as_read_k() == s


def test_format_sequence_file():
    """Test formatting writes 1-based indices."""
    assert format_sequence_file(2, 1, (1, 0)) == "2 1\n2 1\n"
