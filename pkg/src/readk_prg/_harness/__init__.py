"""Fooling measurements, structural suites and corpus runs."""

from readk_prg._harness.baselines import (
    BaselineError,
    baseline_key,
    compare_to_baselines,
    format_baselines,
    load_baselines,
)
from readk_prg._harness.corpus import (
    CorpusProgram,
    CorpusRun,
    build_generator,
    build_programs,
    measure,
    reading_order,
    run_corpus,
)
from readk_prg._harness.fooling import (
    DEFAULT_SEED_CAP,
    FoolingReport,
    IncompatibleDimensionsError,
    TooLargeForExhaustiveError,
    exact_fooling_error,
    proportion_interval,
    sampled_fooling_error,
)
from readk_prg._harness.hybrid import (
    Distribution,
    HybridReport,
    hybrid_battery,
    hybrid_check,
)
from readk_prg._harness.pool import ordered_map
from readk_prg._harness.reports import (
    Counterexample,
    PropertyOutcome,
    SuiteResult,
    write_fooling_reports,
    write_suite_result,
)
from readk_prg._harness.suite import (
    partition_battery,
    random_read_k_sequence,
    sequence_count,
    shrink,
    structural_suite,
)

__all__ = [
    "DEFAULT_SEED_CAP",
    "BaselineError",
    "Counterexample",
    "CorpusProgram",
    "CorpusRun",
    "Distribution",
    "FoolingReport",
    "HybridReport",
    "IncompatibleDimensionsError",
    "PropertyOutcome",
    "SuiteResult",
    "TooLargeForExhaustiveError",
    "baseline_key",
    "build_generator",
    "build_programs",
    "compare_to_baselines",
    "exact_fooling_error",
    "format_baselines",
    "hybrid_battery",
    "hybrid_check",
    "load_baselines",
    "measure",
    "ordered_map",
    "partition_battery",
    "proportion_interval",
    "random_read_k_sequence",
    "reading_order",
    "run_corpus",
    "sampled_fooling_error",
    "sequence_count",
    "shrink",
    "structural_suite",
    "write_fooling_reports",
    "write_suite_result",
]
