"""Distinguisher corpus runs.

A corpus config lists program families and generator recipes. Every program
is measured against every generator, exactly when the caps allow and by
sampling otherwise, and the reports are written next to a suite summary.
Program ``i`` of family ``j`` draws from ``default_rng([rng_seed, j, i, .])``,
so a corpus is reproducible from the run configuration alone.
"""

import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from readk_prg._config import (
    CorpusConfig,
    GeneratorSpec,
    ProgramSpec,
    RunConfig,
    SequenceFamily,
    provenance,
)
from readk_prg._generators import (
    Descriptor,
    InvalidParamsError,
    Mode,
    build_inw,
    build_linear_length_generator,
    build_read_k_generator,
)
from readk_prg._harness.fooling import (
    FoolingReport,
    exact_fooling_error,
    sampled_fooling_error,
)
from readk_prg._harness.pool import ordered_map
from readk_prg._harness.reports import (
    Counterexample,
    SuiteResult,
    write_fooling_reports,
    write_suite_result,
)
from readk_prg._harness.suite import random_read_k_sequence
from readk_prg._programs import (
    ObliviousBranchingProgram,
    Restriction,
    build_address_function,
    build_constant,
    build_mod_counter,
    build_parity,
    is_read_once,
    pad_to_exact_k,
    program_to_dict,
    random_obp,
    read_profile,
    restrict_program,
)
from readk_prg._sequences import k_pass_sequence, two_pass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusProgram:
    """A corpus program and its stable id."""

    program_id: str
    program: ObliviousBranchingProgram


@dataclass
class CorpusRun:
    """Reports of a corpus run, its suite summary and the files written."""

    result: SuiteResult
    reports: list[FoolingReport] = field(default_factory=list)
    paths: list[Path] = field(default_factory=list)


def reading_order(
    family: SequenceFamily, n: int, k: int, rng: np.random.Generator
) -> tuple[int, ...]:
    """A reading order over ``[0, n)`` from one of the named families."""
    if family == "identity":
        return tuple(v for _ in range(k) for v in range(n))
    if family == "two_pass_reversal":
        return two_pass(list(reversed(range(n)))).elems
    if family == "two_pass_random":
        return two_pass([int(v) for v in rng.permutation(n)]).elems
    if family == "k_pass_random":
        perms = [list(range(n))] + [
            [int(v) for v in rng.permutation(n)] for _ in range(k - 1)
        ]
        return k_pass_sequence(perms).elems
    return random_read_k_sequence(n, k, rng).elems


def build_programs(spec: ProgramSpec, index: int, rng_seed: int) -> list[CorpusProgram]:
    """Instantiate one program family of a corpus."""
    if spec.kind in ("random", "restricted"):
        out = []
        for i in range(spec.count):
            total = spec.n + (spec.fixed if spec.kind == "restricted" else 0)
            rng = np.random.default_rng([rng_seed, index, i, 0])
            order = reading_order(spec.order, total, spec.k, rng)
            B = random_obp(order, total, spec.width, [rng_seed, index, i, 1])
            if spec.kind == "restricted":
                fixed = sorted(int(v) for v in rng.choice(total, size=spec.fixed, replace=False))
                values = tuple(int(b) for b in rng.integers(0, 2, size=spec.fixed))
                B = restrict_program(B, Restriction(tuple(fixed), values))
            out.append(CorpusProgram(f"{spec.kind}-{index:02d}-{i:03d}", B))
        return out

    rng = np.random.default_rng([rng_seed, index, 0, 0])
    if spec.kind == "parity":
        B = build_parity(spec.n, reading_order(spec.order, spec.n, spec.k, rng))
        name = f"parity-{index:02d}"
    elif spec.kind == "mod_counter":
        order = reading_order(spec.order, spec.n, spec.k, rng)
        B = build_mod_counter(order, spec.n, spec.modulus, spec.target)
        name = f"mod{spec.modulus}-{spec.target}-{index:02d}"
    elif spec.kind == "address":
        B = build_address_function(spec.n_addr)
        name = f"address-{index:02d}"
    else:
        B = build_constant(spec.n, spec.value, reading_order(spec.order, spec.n, spec.k, rng))
        name = f"constant-{index:02d}"
    return [CorpusProgram(name, B)]


def build_generator(
    spec: GeneratorSpec, B: ObliviousBranchingProgram, config: RunConfig
) -> Descriptor:
    """Build the generator a recipe prescribes for ``B``.

    The width parameter is at least the program's width.

    Raises:
        InvalidParamsError: When the recipe cannot be built for ``B``.
    """
    eps = spec.eps if spec.eps is not None else config.eps
    w = max(spec.w if spec.w is not None else config.w, B.w, 2)
    toy_aux = spec.toy_aux if spec.toy_aux is not None else config.toy_aux
    mode = spec.mode if spec.mode is not None else config.mode
    if spec.kind == "uniform":
        return build_inw(B.n, 1, w, eps, Mode.UNIFORM)
    if spec.kind == "inw":
        d = spec.d if spec.d is not None else 2 * max(read_profile(B).k, 1)
        return build_inw(B.n, d, w, eps, mode, toy_aux)
    if spec.kind == "read_k":
        padded = read_profile(pad_to_exact_k(B))
        return build_read_k_generator(
            padded.as_sequence(B.n), w, eps, mode, toy_aux
        )
    return build_linear_length_generator(
        read_profile(B).elems, B.n, w, eps, mode, toy_aux, spec.threshold
    )


def measure(
    B: ObliviousBranchingProgram,
    G: Descriptor,
    config: RunConfig,
    method: str = "auto",
    *,
    program_id: str = "program",
    generator_id: str = "generator",
) -> FoolingReport:
    """Exact or sampled fooling error; ``auto`` goes exact whenever the caps allow."""
    exact_ok = G.s <= config.seed_cap and (B.n <= config.input_cap or is_read_once(B))
    if method == "exact" or (method == "auto" and exact_ok):
        return exact_fooling_error(
            B,
            G,
            program_id=program_id,
            generator_id=generator_id,
            input_cap=config.input_cap,
            seed_cap=config.seed_cap,
            threads=config.threads,
        )
    if method == "auto":
        warnings.warn(
            f"{program_id} vs {generator_id}: n={B.n}, s={G.s} exceed the exhaustive caps; "
            f"sampling {config.samples} seeds instead",
            UserWarning,
            stacklevel=2,
        )
    return sampled_fooling_error(
        B,
        G,
        config.samples,
        config.rng_seed,
        program_id=program_id,
        generator_id=generator_id,
        input_cap=config.input_cap,
        confidence=config.confidence,
        ci_method=config.ci_method,
    )


def _guaranteed(G: Descriptor) -> bool:
    return G.mode is not Mode.TOY


def _within_eps(report: FoolingReport) -> bool:
    if report.method == "exhaustive":
        return report.within()
    assert report.ci_low is not None and report.eps is not None
    return report.ci_low <= report.eps


def run_corpus(
    config: RunConfig, corpus: CorpusConfig | None = None, *, write: bool = True
) -> CorpusRun:
    """Measure every program of the corpus against every generator recipe.

    Toy-mode generators carry no error guarantee; their reports are
    recorded (and compared to baselines elsewhere) but not held to ``eps``.
    Pairs a recipe cannot be built for are skipped and counted.
    """
    corpus = corpus or config.corpus or CorpusConfig()
    result = SuiteResult(name=corpus.name)
    programs = [
        p
        for j, spec in enumerate(corpus.programs)
        for p in build_programs(spec, j, config.rng_seed)
    ]
    result.instances["programs"] = len(programs)

    pairs: list[tuple[CorpusProgram, GeneratorSpec, Descriptor]] = []
    skipped = 0
    for p in programs:
        for g in corpus.generators:
            try:
                pairs.append((p, g, build_generator(g, p.program, config)))
            except InvalidParamsError as e:
                skipped += 1
                logger.warning("Skipping %s x %s: %s", p.program_id, g.name, e)
    result.instances["pairs"] = len(pairs)
    result.instances["skipped"] = skipped

    # pairs are spread over the threads; each measurement runs single-threaded
    inner = config.model_copy(update={"threads": 1})
    reports = ordered_map(
        lambda pair: measure(
            pair[0].program,
            pair[2],
            inner,
            corpus.method,
            program_id=pair[0].program_id,
            generator_id=pair[1].name,
        ),
        pairs,
        config.threads,
    )
    for (p, g, G), report in zip(pairs, reports, strict=True):
        if not _guaranteed(G):
            continue
        ok = _within_eps(report)
        result.outcome("within_eps").record(
            ok,
            Counterexample(
                "within_eps",
                {
                    "program_id": p.program_id,
                    "generator": g.name,
                    "error": str(report.error),
                    "eps": report.eps,
                    "program": program_to_dict(p.program),
                },
            ),
        )

    run = CorpusRun(result=result, reports=list(reports))
    if write:
        header = provenance(config)
        run.paths.append(
            write_fooling_reports(
                run.reports, config.output_dir, header, config.format, stem=corpus.name
            )
        )
        run.paths.append(
            write_suite_result(
                result, config.output_dir, header, config.format, stem=f"{corpus.name}-summary"
            )
        )
    logger.info(
        "Corpus %s: %d reports, %s", corpus.name, len(run.reports), "pass" if result.passed else "FAIL"
    )
    return run
