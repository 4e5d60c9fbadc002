"""Tests for suite results and report files."""

from pathlib import Path

import yaml
from readk_prg._generators import Mode, build_inw
from readk_prg._harness import (
    Counterexample,
    PropertyOutcome,
    SuiteResult,
    exact_fooling_error,
    write_fooling_reports,
    write_suite_result,
)
from readk_prg._harness.reports import format_csv
from readk_prg._programs import build_mod_counter, build_parity


def test_outcome_keeps_first_counterexample():
    """Test later failures do not replace the first counterexample."""
    outcome = PropertyOutcome("p")

    outcome.record(True)
    outcome.record(False, Counterexample("p", {"i": 1}))
    outcome.record(False, Counterexample("p", {"i": 2}))

    assert (outcome.checked, outcome.failures) == (3, 2)
    assert not outcome.passed
    assert outcome.counterexample == Counterexample("p", {"i": 1})


def test_merge_prefixes_names():
    """Test merged results are namespaced by the child suite name."""
    parent = SuiteResult(name="suite")
    child = SuiteResult(name="hybrid", instances={"trials": 3})
    child.outcome("holds").record(False, Counterexample("holds", {"trial": 0}))

    parent.merge(child)

    assert parent.instances == {"hybrid.trials": 3}
    assert parent.failed_properties == ["hybrid.holds"]
    assert not parent.passed
    data = parent.to_dict()
    assert data["properties"]["hybrid.holds"]["counterexample"] == {
        "property": "holds",
        "trial": 0,
    }


def test_format_csv_with_provenance():
    """Test provenance becomes comment lines above the header."""
    text = format_csv([{"a": 1, "b": None}], ["a", "b"], {"tool": "readk-prg"})

    assert text == "# tool: readk-prg\na,b\n1,\n"


def _reports():
    G = build_inw(3, 2, 3, 0.1, Mode.UNIFORM)
    return [
        exact_fooling_error(build_parity(3), G, program_id="parity", generator_id="u"),
        exact_fooling_error(
            build_mod_counter([0, 1, 2], 3, 3, 0), G, program_id="mod3", generator_id="u"
        ),
    ]


def test_fooling_reports_yaml_sorted(tmp_path: Path):
    """Test the structured file opens with provenance and sorts by id."""
    path = write_fooling_reports(_reports(), tmp_path, {"tool": "readk-prg"})

    data = yaml.safe_load(path.read_text())

    assert path.name == "fooling.yaml"
    assert list(data) == ["provenance", "reports"]
    assert [r["program_id"] for r in data["reports"]] == ["mod3", "parity"]


def test_fooling_reports_csv(tmp_path: Path):
    """Test the CSV file has one row per report."""
    path = write_fooling_reports(_reports(), tmp_path, {"tool": "readk-prg"}, "csv", stem="x")

    lines = path.read_text().splitlines()

    assert path.name == "x.csv"
    assert lines[0] == "# tool: readk-prg"
    assert lines[1].startswith("program_id,generator_id,method")
    assert len(lines) == 4


def test_write_is_reproducible(tmp_path: Path):
    """Test writing the same reports twice gives identical bytes."""
    first = write_fooling_reports(_reports(), tmp_path / "a", {"tool": "readk-prg"})
    second = write_fooling_reports(_reports(), tmp_path / "b", {"tool": "readk-prg"})

    assert first.read_bytes() == second.read_bytes()


def test_suite_result_files(tmp_path: Path):
    """Test suite summaries in both formats."""
    result = SuiteResult(name="structural", instances={"accepted": 2})
    result.outcome("ok").record(True)
    result.outcome("bad").record(False, Counterexample("bad", {"sequence": [1, 1]}))

    structured = write_suite_result(result, tmp_path, {"tool": "readk-prg"})
    csv_path = write_suite_result(result, tmp_path, {"tool": "readk-prg"}, "csv")

    data = yaml.safe_load(structured.read_text())
    assert data["suite"] == "structural"
    assert data["passed"] is False
    assert data["properties"]["bad"]["counterexample"]["sequence"] == [1, 1]
    rows = csv_path.read_text().splitlines()
    assert rows[1] == "property,passed,checked,failures,counterexample"
    assert rows[2] == "ok,True,1,0,"
