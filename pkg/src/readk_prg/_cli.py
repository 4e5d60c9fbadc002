"""``readk-prg`` command line.

Exit codes: 0 on success, 1 when a checked property or bound fails, 2 on
usage, parse and configuration errors. Every file a command writes starts
with the merged run configuration, the tool version, the subcommand and its
arguments.
"""

import argparse
import logging
import math
import sys
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

import yaml

from readk_prg._config import (
    ConfigError,
    RunConfig,
    desk_corpus,
    load_run_config,
    provenance,
)
from readk_prg._generators import (
    CompositeDescriptor,
    Descriptor,
    DescriptorParseError,
    InvalidParamsError,
    Mode,
    SeedLengthMismatchError,
    build_inw,
    build_linear_length_generator,
    build_read_k_generator,
    dump_descriptor,
    load_descriptor,
    seed_report,
)
from readk_prg._harness import (
    BaselineError,
    Counterexample,
    FoolingReport,
    IncompatibleDimensionsError,
    SuiteResult,
    TooLargeForExhaustiveError,
    compare_to_baselines,
    exact_fooling_error,
    hybrid_battery,
    load_baselines,
    measure,
    run_corpus,
    structural_suite,
    write_fooling_reports,
    write_suite_result,
)
from readk_prg._harness.reports import dump_structured, format_csv, write_text
from readk_prg._programs import (
    InputLengthMismatchError,
    InvalidProgramError,
    ProgramParseError,
    build_mod_counter,
    build_parity,
    load_program,
    random_obp,
)
from readk_prg._sequences import (
    AmbiguousDecompositionError,
    LengthMismatchError,
    NotPerReadMonotoneError,
    ReadKSequence,
    SequenceParseError,
    WrongMultiplicityError,
    head_visit_profile,
    is_2_regularly_interleaving,
    is_per_read_monotone,
    monotone_decomposition,
    pair_view,
    partition_variables,
    read_sequence_file,
    partition_size_bound,
    two_pass,
    verify_partition,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS: tuple[type[BaseException], ...] = (
    ConfigError,
    SequenceParseError,
    WrongMultiplicityError,
    LengthMismatchError,
    ProgramParseError,
    InvalidProgramError,
    InputLengthMismatchError,
    DescriptorParseError,
    InvalidParamsError,
    SeedLengthMismatchError,
    IncompatibleDimensionsError,
    TooLargeForExhaustiveError,
    BaselineError,
    OSError,
)

# RunConfig fields settable from the command line
CONFIG_FLAGS = (
    "input_cap",
    "seed_cap",
    "rng_seed",
    "samples",
    "threads",
    "format",
    "output_dir",
    "toy_aux",
    "eps",
    "w",
    "mode",
    "confidence",
    "ci_method",
)

Handler = Callable[[argparse.Namespace, RunConfig], int]

# parsed attributes that are neither configuration nor command arguments
_NOT_ARGUMENTS = frozenset({*CONFIG_FLAGS, "config", "log_level", "handler", "command"})


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML run configuration.")
    common.add_argument("--output-dir", type=Path, help="Where report files go.")
    common.add_argument("--format", choices=["csv", "structured"])
    common.add_argument("--rng-seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--samples", type=int, help="Sample count for sampled fooling.")
    common.add_argument("--input-cap", type=int, help="Largest n enumerated exhaustively.")
    common.add_argument("--seed-cap", type=int, help="Largest s enumerated exhaustively.")
    common.add_argument("--eps", type=float)
    common.add_argument("--w", type=int, help="Width parameter of generators.")
    common.add_argument("--mode", choices=[m.value for m in Mode])
    common.add_argument("--toy-aux", type=int, help="Key bits per level in toy mode.")
    common.add_argument("--confidence", type=float)
    common.add_argument("--ci-method", choices=["normal", "wilson", "exact"])
    common.add_argument(
        "--log-level",
        default="warning",
        choices=["debug", "info", "warning", "error"],
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """The full argument parser with one subcommand per operation."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="readk-prg",
        description="Analyze read-k sequences, build generators for oblivious "
        "branching programs and measure how well they fool them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="Structure of a sequence file.")
    p.add_argument("sequence", type=Path)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("partition", parents=[common], help="Partition a sequence's variables.")
    p.add_argument("sequence", type=Path)
    p.set_defaults(handler=cmd_partition)

    p = sub.add_parser("build-gen", parents=[common], help="Build a generator descriptor.")
    p.add_argument("kind", choices=["read_k", "linear_length", "inw"])
    p.add_argument("sequence", type=Path)
    p.add_argument("--threshold", type=int, help="Frequency threshold for linear_length.")
    p.add_argument("--out", type=Path, help="Descriptor path (default: <output-dir>/descriptor.json).")
    p.set_defaults(handler=cmd_build_gen)

    p = sub.add_parser("fool", parents=[common], help="Measure a generator against a program.")
    p.add_argument("program", type=Path)
    p.add_argument("descriptor", type=Path)
    p.add_argument(
        "--method",
        choices=["exact", "sampled", "auto"],
        help="Default: exact, or sampled when --samples is given.",
    )
    p.add_argument("--baseline", type=Path, help="Baseline file to compare exact counts with.")
    p.set_defaults(handler=cmd_fool)

    p = sub.add_parser("suite", parents=[common], help="Structural, hybrid and corpus suites.")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--hybrid-trials", type=int, default=100)
    p.add_argument("--corpus", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(handler=cmd_suite)

    p = sub.add_parser("demo", parents=[common], help="Small end-to-end run.")
    p.add_argument("--n", type=int, default=8)
    p.set_defaults(handler=cmd_demo)
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    return {name: getattr(args, name, None) for name in CONFIG_FLAGS}


def _arguments(args: argparse.Namespace, **resolved: Any) -> dict[str, Any]:
    values = {k: v for k, v in vars(args).items() if k not in _NOT_ARGUMENTS}
    values.update(resolved)
    return {k: str(v) if isinstance(v, Path) else v for k, v in sorted(values.items())}


def _header(args: argparse.Namespace, config: RunConfig, **resolved: Any) -> dict[str, Any]:
    return provenance(config, args.command, _arguments(args, **resolved))


def replay_argv(header: Mapping[str, Any], config_path: Path) -> list[str]:
    """Command line that reruns the command recorded in a provenance header.

    The recorded configuration is expected in ``config_path`` (for instance
    ``yaml.safe_dump(header["config"])``); the recorded arguments become
    positionals and flags of the recorded subcommand.

    Raises:
        ConfigError: If the header has no command or names an unknown one.
    """
    command = header.get("command")
    subparsers = next(
        a for a in build_parser()._actions if isinstance(a, argparse._SubParsersAction)
    )
    if command not in subparsers.choices:
        raise ConfigError(f"provenance names no known command: {command!r}")
    arguments: Mapping[str, Any] = header.get("arguments") or {}
    argv: list[str] = [str(command)]
    for action in subparsers.choices[command]._actions:
        value = arguments.get(action.dest)
        if action.dest in _NOT_ARGUMENTS or value is None:
            continue
        if not action.option_strings:
            argv.append(str(value))
        elif isinstance(action, argparse.BooleanOptionalAction):
            argv.append(action.option_strings[0 if value else 1])
        else:
            argv += [action.option_strings[0], str(value)]
    return [*argv, "--config", str(config_path)]


def _one_based(vs: Any) -> str:
    return " ".join(str(v + 1) for v in vs)


def _print_report(report: FoolingReport) -> None:
    line = (
        f"{report.program_id} vs {report.generator_id}: {report.method} "
        f"n={report.n} s={report.s} "
        f"Pr_U={report.uniform_probability} Pr_G={report.generator_probability} "
        f"error={report.error} ({float(report.error):.6g})"
    )
    if report.ci_low is not None:
        line += (
            f" {report.confidence:.0%} CI [{report.ci_low:.6g}, {report.ci_high:.6g}]"
        )
    print(line)


def cmd_analyze(args: argparse.Namespace, config: RunConfig) -> int:
    """Print the structure of a read-k sequence."""
    s = read_sequence_file(args.sequence).as_read_k()
    print(f"n={s.n} k={s.k} m={s.m}")

    monotone = is_per_read_monotone(s)
    if monotone.accepted:
        directions = ", ".join(d.value[:3] for d in monotone.directions)
        print(f"per-read monotone: yes [{directions}]")
    else:
        w = monotone.witness
        assert w is not None
        print(
            f"per-read monotone: no (read {w.read_index + 1}: "
            f"{_one_based(w.before)} then {_one_based(w.after)})"
        )

    verdicts: list[str] = []
    overall = True
    for i in range(s.k):
        for j in range(i + 1, s.k):
            result = is_2_regularly_interleaving(pair_view(s, i, j))
            if result.accepted:
                assert result.certificate is not None
                verdicts.append(
                    f"  reads ({i + 1},{j + 1}): accept, {len(result.certificate.blocks)} blocks"
                )
            else:
                assert result.witness is not None
                overall = False
                verdicts.append(
                    f"  reads ({i + 1},{j + 1}): reject at position {result.witness.position + 1}"
                )
    print(f"interleaving: {'accept' if overall else 'reject'}")
    for v in verdicts:
        print(v)

    if monotone.accepted:
        try:
            decomposition = monotone_decomposition(s)
            pieces = ", ".join(
                f"[{seg.start + 1}..{seg.end}] {seg.direction.value[:3]}"
                for seg in decomposition.segments
            )
            print(f"monotone decomposition: {pieces}")
        except (NotPerReadMonotoneError, AmbiguousDecompositionError) as e:
            print(f"monotone decomposition: none ({e})")

    profile = head_visit_profile(s)
    print(f"head visits (identity tape): {' '.join(str(v) for v in profile.visits)}")
    print(f"max visits {profile.max_visits} (bound 2k={2 * s.k})")
    partition = partition_variables(s)
    print(f"t={partition.t} partition, visits={profile.max_visits}")
    return EXIT_OK


def _partition_payload(s: ReadKSequence) -> tuple[dict[str, Any], list[dict[str, Any]]]:
    partition = partition_variables(s)
    verify_partition(s, partition.parts)
    bound = partition_size_bound(s.n, s.k)
    stats = {
        "n": s.n,
        "k": s.k,
        "k_pass": partition.k_pass,
        "t": partition.t,
        "t_over_sqrt_n": partition.t / math.sqrt(s.n) if s.n else 0.0,
        "bound": bound,
        "t_over_bound": partition.t / bound if bound else 0.0,
    }
    parts = [
        {
            "part": index + 1,
            "variables": [v + 1 for v in cert.variables],
            "directions": [d.value for d in cert.directions],
            "blocks": {
                f"{i + 1},{j + 1}": [sorted(v + 1 for v in b) for b in c.blocks]
                for (i, j), c in cert.interleaving.items()
            },
        }
        for index, cert in enumerate(partition.certificates)
    ]
    return stats, parts


def cmd_partition(args: argparse.Namespace, config: RunConfig) -> int:
    """Partition the variables and write the parts with their certificates."""
    s = read_sequence_file(args.sequence).as_read_k()
    stats, parts = _partition_payload(s)
    header = _header(args, config)
    if config.format == "csv":
        rows = [
            {
                "part": p["part"],
                "size": len(p["variables"]),
                "variables": " ".join(map(str, p["variables"])),
                "directions": " ".join(p["directions"]),
            }
            for p in parts
        ]
        path = write_text(
            config.output_dir / "partition.csv",
            format_csv(rows, ["part", "size", "variables", "directions"], {**header, **stats}),
        )
    else:
        path = write_text(
            config.output_dir / "partition.yaml",
            dump_structured({"provenance": header, **stats, "parts": parts}),
        )
    print(f"t={stats['t']} (k-pass: {'yes' if stats['k_pass'] else 'no'})")
    print(f"t/sqrt(n)={stats['t_over_sqrt_n']:.4g}")
    print(f"bound exp(k^2)*n^(1-1/2^(k-1))={stats['bound']:.6g}, t/bound={stats['t_over_bound']:.4g}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_build_gen(args: argparse.Namespace, config: RunConfig) -> int:
    """Build a generator from a sequence file and write its descriptor."""
    seq = read_sequence_file(args.sequence)
    G: Descriptor
    if args.kind == "linear_length":
        G = build_linear_length_generator(
            seq.elems, seq.n, config.w, config.eps, config.mode, config.toy_aux, args.threshold
        )
    elif args.kind == "read_k":
        G = build_read_k_generator(
            seq.as_read_k(), config.w, config.eps, config.mode, config.toy_aux
        )
    else:
        s = seq.as_read_k()
        G = build_inw(s.n, 2 * s.k, config.w, config.eps, config.mode, config.toy_aux)

    extra: dict[str, Any] = {"provenance": _header(args, config)}
    print(f"s={G.s}")
    if isinstance(G, CompositeDescriptor):
        report = seed_report(G)
        extra["seed_report"] = report.to_dict()
        print(f"t={report.t} parts, sum of part seeds={sum(report.part_seed_lengths)}")
        if G.threshold is not None:
            print(
                f"|F|={len(G.frequent)} frequent variables (k(n)={G.threshold}, "
                f"length/k(n)={len(G.sequence) / G.threshold:.4g})"
            )
    out = args.out or config.output_dir / "descriptor.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    dump_descriptor(G, out, extra)
    print(f"wrote {out}")
    return EXIT_OK


def cmd_fool(args: argparse.Namespace, config: RunConfig) -> int:
    """Measure one descriptor against one program."""
    B = load_program(args.program)
    G = load_descriptor(args.descriptor)
    method = args.method or ("sampled" if args.samples is not None else "exact")
    report = measure(
        B,
        G,
        config,
        method,
        program_id=args.program.stem,
        generator_id=args.descriptor.stem,
    )
    _print_report(report)
    path = write_fooling_reports(
        [report], config.output_dir, _header(args, config, method=method), config.format, stem="fool"
    )
    print(f"wrote {path}")

    status = EXIT_OK
    if report.method == "exhaustive" and not report.within():
        print(f"error {float(report.error):.6g} exceeds eps={G.eps}")
        status = EXIT_FAILED
    if args.baseline is not None:
        comparison = compare_to_baselines([report], load_baselines(args.baseline))
        if not comparison.passed:
            for name in comparison.failed_properties:
                cx = comparison.properties[name].counterexample
                print(f"baseline check {name} failed: {cx.to_dict() if cx else ''}")
            status = EXIT_FAILED
        else:
            print("matches baseline")
    return status


def _hybrid_result(trials: int, rng_seed: int) -> SuiteResult:
    result = SuiteResult(name="hybrid")
    reports = hybrid_battery(trials, 8, rng_seed)
    result.instances["trials"] = len(reports)
    outcome = result.outcome("hybrid_inequality")
    for i, report in enumerate(reports):
        outcome.record(
            report.holds, Counterexample("hybrid_inequality", {"trial": i, **report.to_dict()})
        )
    return result


def cmd_suite(args: argparse.Namespace, config: RunConfig) -> int:
    """Run the structural suite, the hybrid battery and the corpus."""
    summary = SuiteResult(name="suite")
    summary.merge(structural_suite(args.n_max, args.k))
    summary.merge(_hybrid_result(args.hybrid_trials, config.rng_seed))
    if args.corpus:
        corpus = config.corpus or desk_corpus()
        summary.merge(run_corpus(config, corpus).result)
    path = write_suite_result(summary, config.output_dir, _header(args, config), config.format)

    for name, outcome in summary.properties.items():
        print(f"{'PASS' if outcome.passed else 'FAIL'} {name} ({outcome.checked} checked)")
        if outcome.counterexample is not None and not outcome.passed:
            print("  " + yaml.safe_dump(outcome.counterexample.to_dict(), default_flow_style=True).strip())
    print(f"wrote {path}")
    return EXIT_OK if summary.passed else EXIT_FAILED


def cmd_demo(args: argparse.Namespace, config: RunConfig) -> int:
    """Two-pass reversal, its read-k generator in toy mode, and two programs."""
    s = two_pass(list(reversed(range(args.n))))
    G = build_read_k_generator(s, config.w, config.eps, Mode.TOY, config.toy_aux)
    print(f"sequence: {_one_based(s.elems)}")
    print(f"read-{s.k} generator: t={G.t} s={G.s} (n={s.n})")
    programs = {
        "parity": build_parity(s.n),
        "mod3": build_mod_counter(s.elems, s.n, 3, 0),
        "random": random_obp(s.elems, s.n, config.w, config.rng_seed),
    }
    reports = [
        exact_fooling_error(
            B,
            G,
            program_id=name,
            generator_id="toy-read-k",
            input_cap=config.input_cap,
            seed_cap=config.seed_cap,
            threads=config.threads,
        )
        for name, B in programs.items()
    ]
    for report in reports:
        _print_report(report)
    path = write_fooling_reports(
        reports, config.output_dir, _header(args, config), config.format, stem="demo"
    )
    print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Entry point of the ``readk-prg`` console script."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s"
    )
    handler: Handler = args.handler
    try:
        config = load_run_config(args.config, _overrides(args))
        logger.info("%s: %s", args.command, config.model_dump(mode="json"))
        return handler(args, config)
    except USAGE_ERRORS as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
