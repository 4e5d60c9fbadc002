"""Stored regression values for exact fooling errors."""

from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any

import yaml

from readk_prg._harness.fooling import FoolingReport
from readk_prg._harness.reports import Counterexample, SuiteResult


class BaselineError(ValueError):
    """Raised when a baseline file cannot be read."""


def baseline_key(report: FoolingReport) -> str:
    return f"{report.program_id}::{report.generator_id}"


def baseline_entry(report: FoolingReport) -> dict[str, Any]:
    """Exact counts of an exhaustive report."""
    return {
        "s": report.s,
        "uniform_accepting": report.uniform.accepting_count,
        "uniform_total": report.uniform.total_count,
        "generator_accepting": report.generator_accepting,
        "generator_total": report.generator_total,
        "error": str(report.error),
    }


def format_baselines(
    reports: Iterable[FoolingReport], header: Mapping[str, Any] | None = None
) -> str:
    """YAML text for the exhaustive reports, keyed and sorted by pair id.

    Sampled reports are not exact and are left out.
    """
    entries = {
        baseline_key(r): baseline_entry(r)
        for r in sorted(reports, key=baseline_key)
        if r.method == "exhaustive"
    }
    payload: dict[str, Any] = {}
    if header is not None:
        payload["provenance"] = dict(header)
    payload["baselines"] = entries
    return yaml.safe_dump(payload, sort_keys=False)


def load_baselines(path: str | Path) -> dict[str, dict[str, Any]]:
    """Stored entries keyed by ``<program id>::<generator id>``.

    Raises:
        BaselineError: If the file is missing, unparsable or has no ``baselines`` mapping.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise BaselineError(f"{path}: {e}") from e
    entries = data.get("baselines") if isinstance(data, dict) else None
    if not isinstance(entries, dict):
        raise BaselineError(f"{path}: expected a 'baselines' mapping")
    return entries


def compare_to_baselines(
    reports: Iterable[FoolingReport], baselines: Mapping[str, Mapping[str, Any]]
) -> SuiteResult:
    """Check every exhaustive report against its stored entry.

    A report without a stored entry fails ``baseline_present``; a stored
    entry with different counts fails ``matches_baseline``.
    """
    result = SuiteResult(name="baselines")
    for report in reports:
        if report.method != "exhaustive":
            continue
        key = baseline_key(report)
        stored = baselines.get(key)
        result.outcome("baseline_present").record(
            stored is not None, Counterexample("baseline_present", {"pair": key})
        )
        if stored is None:
            continue
        measured = baseline_entry(report)
        result.outcome("matches_baseline").record(
            dict(stored) == measured,
            Counterexample(
                "matches_baseline", {"pair": key, "stored": dict(stored), "measured": measured}
            ),
        )
    return result
