"""Suite results and report files.

Structured reports are YAML documents that open with the run provenance.
CSV reports carry the provenance as ``#`` header lines followed by one row
per record. Nothing time-dependent is written, so re-running a command with
the embedded configuration reproduces its files byte for byte.
"""

import csv
import io
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import yaml

from readk_prg._harness.fooling import FoolingReport

ReportFormat = Literal["csv", "structured"]

FOOLING_FIELDS = [
    "program_id",
    "generator_id",
    "method",
    "n",
    "s",
    "uniform_method",
    "uniform_accepting",
    "uniform_total",
    "generator_accepting",
    "generator_total",
    "uniform_probability",
    "generator_probability",
    "error",
    "error_float",
    "eps",
    "samples",
    "confidence",
    "ci_method",
    "ci_low",
    "ci_high",
    "eps_inside_ci",
]


@dataclass(frozen=True)
class Counterexample:
    """Everything needed to reproduce one failing instance."""

    property: str
    data: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"property": self.property, **self.data}


@dataclass
class PropertyOutcome:
    name: str
    checked: int = 0
    failures: int = 0
    counterexample: Counterexample | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, counterexample: Counterexample | None = None) -> None:
        """Count one instance; the first failure's counterexample is kept."""
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = counterexample


@dataclass
class SuiteResult:
    """Outcome of a suite: instance counts and one entry per property.

    A failing property always carries a counterexample.
    """

    name: str
    instances: dict[str, int] = field(default_factory=dict)
    properties: dict[str, PropertyOutcome] = field(default_factory=dict)

    def outcome(self, name: str) -> PropertyOutcome:
        if name not in self.properties:
            self.properties[name] = PropertyOutcome(name)
        return self.properties[name]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties.values())

    @property
    def failed_properties(self) -> list[str]:
        return [name for name, p in self.properties.items() if not p.passed]

    def merge(self, other: "SuiteResult") -> "SuiteResult":
        """Fold ``other`` in, prefixing its names with ``other.name``."""
        for key, count in other.instances.items():
            self.instances[f"{other.name}.{key}"] = count
        for key, outcome in other.properties.items():
            self.properties[f"{other.name}.{key}"] = outcome
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "instances": dict(self.instances),
            "properties": {
                name: {
                    "passed": p.passed,
                    "checked": p.checked,
                    "failures": p.failures,
                    **(
                        {"counterexample": p.counterexample.to_dict()}
                        if p.counterexample is not None
                        else {}
                    ),
                }
                for name, p in self.properties.items()
            },
        }


def dump_structured(payload: Mapping[str, Any]) -> str:
    return yaml.safe_dump(dict(payload), sort_keys=False, default_flow_style=False)


def format_csv(
    rows: Iterable[Mapping[str, Any]],
    fieldnames: Sequence[str],
    provenance: Mapping[str, Any] | None = None,
) -> str:
    """CSV text, the provenance header written as ``#`` comment lines."""
    buf = io.StringIO()
    if provenance is not None:
        for line in dump_structured(provenance).splitlines():
            buf.write(f"# {line}\n")
    writer = csv.DictWriter(
        buf, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n"
    )
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in fieldnames})
    return buf.getvalue()


def write_text(path: Path, content: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    return path


def write_fooling_reports(
    reports: Sequence[FoolingReport],
    output_dir: Path,
    provenance: Mapping[str, Any],
    fmt: ReportFormat = "structured",
    stem: str = "fooling",
) -> Path:
    """Write one file holding every report, sorted by (program, generator) id."""
    ordered = sorted(reports, key=lambda r: (r.program_id, r.generator_id))
    if fmt == "csv":
        return write_text(
            output_dir / f"{stem}.csv",
            format_csv((r.to_dict() for r in ordered), FOOLING_FIELDS, provenance),
        )
    return write_text(
        output_dir / f"{stem}.yaml",
        dump_structured(
            {"provenance": dict(provenance), "reports": [r.to_dict() for r in ordered]}
        ),
    )


def write_suite_result(
    result: SuiteResult,
    output_dir: Path,
    provenance: Mapping[str, Any],
    fmt: ReportFormat = "structured",
    stem: str | None = None,
) -> Path:
    """Write a suite summary; CSV has one row per property."""
    stem = stem or result.name
    if fmt == "csv":
        rows = [
            {
                "property": name,
                "passed": p.passed,
                "checked": p.checked,
                "failures": p.failures,
                "counterexample": yaml.safe_dump(
                    p.counterexample.to_dict(), default_flow_style=True
                ).strip()
                if p.counterexample
                else None,
            }
            for name, p in result.properties.items()
        ]
        return write_text(
            output_dir / f"{stem}.csv",
            format_csv(
                rows, ["property", "passed", "checked", "failures", "counterexample"], provenance
            ),
        )
    return write_text(
        output_dir / f"{stem}.yaml",
        dump_structured({"provenance": dict(provenance), **result.to_dict()}),
    )
