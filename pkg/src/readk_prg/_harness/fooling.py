"""Fooling error of a generator against a program, exact or sampled."""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Protocol

import numpy as np
from scipy.stats import binomtest, norm

from readk_prg._bits import batchable, mask
from readk_prg._config import DEFAULT_SEED_CAP
from readk_prg._harness.pool import ordered_map
from readk_prg._programs import (
    DEFAULT_EXHAUSTIVE_CAP,
    AcceptanceResult,
    ObliviousBranchingProgram,
    acceptance_probability_uniform,
    evaluate,
    evaluate_many,
    is_read_once,
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIDENCE = 0.99
_CHUNK = 1 << 18

CiMethod = Literal["normal", "wilson", "exact"]


class TooLargeForExhaustiveError(ValueError):
    """Raised when exact enumeration exceeds the configured caps."""


class IncompatibleDimensionsError(ValueError):
    """Raised when a generator's output length differs from the program's input length."""


class SeedGenerator(Protocol):
    """What the harness needs from a generator descriptor."""

    @property
    def s(self) -> int: ...

    @property
    def output_length(self) -> int: ...

    @property
    def eps(self) -> float: ...

    def expand(self, seed: int) -> int: ...

    def expand_many(self, seeds: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class FoolingReport:
    """Measured ``|Pr[B(G(seed)) = 1] - Pr[B(x) = 1]|``.

    Exhaustive reports carry exact counts on both sides. Sampled reports
    carry the sample count and a two-sided confidence interval on the error.
    ``runtime_seconds`` is kept out of :meth:`to_dict` so report files are
    reproducible byte for byte.
    """

    program_id: str
    generator_id: str
    method: Literal["exhaustive", "sampled"]
    n: int
    s: int
    uniform: AcceptanceResult
    generator_accepting: int
    generator_total: int
    eps: float | None = None
    samples: int | None = None
    confidence: float | None = None
    ci_method: CiMethod | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    runtime_seconds: float = field(default=0.0, compare=False)

    @property
    def uniform_probability(self) -> Fraction:
        return self.uniform.probability

    @property
    def generator_probability(self) -> Fraction:
        return Fraction(self.generator_accepting, self.generator_total)

    @property
    def error(self) -> Fraction:
        return abs(self.generator_probability - self.uniform_probability)

    @property
    def ci_half_width(self) -> float | None:
        if self.ci_low is None or self.ci_high is None:
            return None
        return (self.ci_high - self.ci_low) / 2

    @property
    def eps_inside_ci(self) -> bool:
        """Whether the bound ``eps`` lies inside the error's confidence interval."""
        if self.eps is None or self.ci_low is None or self.ci_high is None:
            return False
        return self.ci_low <= self.eps <= self.ci_high

    def within(self, eps: float | None = None) -> bool:
        """Error at most ``eps`` (the generator's budget by default)."""
        bound = self.eps if eps is None else eps
        if bound is None:
            return True
        return self.error <= Fraction(bound)

    def to_dict(self) -> dict[str, Any]:
        return {
            "program_id": self.program_id,
            "generator_id": self.generator_id,
            "method": self.method,
            "n": self.n,
            "s": self.s,
            "uniform_method": self.uniform.method,
            "uniform_accepting": self.uniform.accepting_count,
            "uniform_total": self.uniform.total_count,
            "generator_accepting": self.generator_accepting,
            "generator_total": self.generator_total,
            "uniform_probability": str(self.uniform_probability),
            "generator_probability": str(self.generator_probability),
            "error": str(self.error),
            "error_float": float(self.error),
            "eps": self.eps,
            "samples": self.samples,
            "confidence": self.confidence,
            "ci_method": self.ci_method,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "eps_inside_ci": self.eps_inside_ci,
        }


def _check_dimensions(B: ObliviousBranchingProgram, G: SeedGenerator) -> None:
    if G.output_length != B.n:
        raise IncompatibleDimensionsError(
            f"Generator outputs {G.output_length} bits, program reads n={B.n}"
        )


def _count_seed_chunk(B: ObliviousBranchingProgram, G: SeedGenerator, lo: int, hi: int) -> int:
    if batchable(G.s, B.n):
        outputs = G.expand_many(np.arange(lo, hi, dtype=np.uint64))
        return int(np.count_nonzero(evaluate_many(B, outputs)))
    return sum(evaluate(B, G.expand(seed)) for seed in range(lo, hi))


def exact_fooling_error(
    B: ObliviousBranchingProgram,
    G: SeedGenerator,
    *,
    program_id: str = "program",
    generator_id: str = "generator",
    input_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    seed_cap: int = DEFAULT_SEED_CAP,
    threads: int = 1,
) -> FoolingReport:
    """Enumerate every seed and every input (or count read-once programs exactly).

    Raises:
        IncompatibleDimensionsError: If the generator's output length is not ``n``.
        TooLargeForExhaustiveError: If ``s`` exceeds ``seed_cap`` or ``n``
            exceeds ``input_cap`` for a program that is not read-once.
    """
    _check_dimensions(B, G)
    if G.s > seed_cap:
        raise TooLargeForExhaustiveError(
            f"Seed length s={G.s} exceeds the exhaustive seed cap {seed_cap}; "
            "use the sampled method (--samples)"
        )
    if B.n > input_cap and not is_read_once(B):
        raise TooLargeForExhaustiveError(
            f"n={B.n} exceeds the exhaustive input cap {input_cap}; "
            "use the sampled method (--samples)"
        )
    started = time.perf_counter()
    uniform = acceptance_probability_uniform(B, exhaustive_cap=input_cap)
    total = 1 << G.s
    chunks = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    accepted = sum(
        ordered_map(lambda c: _count_seed_chunk(B, G, *c), chunks, threads)
    )
    report = FoolingReport(
        program_id=program_id,
        generator_id=generator_id,
        method="exhaustive",
        n=B.n,
        s=G.s,
        uniform=uniform,
        generator_accepting=accepted,
        generator_total=total,
        eps=G.eps,
        runtime_seconds=time.perf_counter() - started,
    )
    logger.debug("%s vs %s: exact error %s", program_id, generator_id, report.error)
    return report


def z_value(confidence: float) -> float:
    return float(norm.ppf(1 - (1 - confidence) / 2))


def proportion_interval(
    hits: int, trials: int, confidence: float, method: CiMethod
) -> tuple[float, float]:
    """Two-sided interval for a binomial proportion.

    ``normal`` is the Wald interval, ``wilson`` the score interval and
    ``exact`` the Clopper-Pearson interval.
    """
    p = hits / trials
    if method == "exact":
        ci = binomtest(hits, trials).proportion_ci(
            confidence_level=confidence, method="exact"
        )
        return float(ci.low), float(ci.high)
    z = z_value(confidence)
    if method == "wilson":
        denom = 1 + z * z / trials
        center = (p + z * z / (2 * trials)) / denom
        half = z / denom * np.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
        return float(center - half), float(center + half)
    half = z * np.sqrt(p * (1 - p) / trials)
    return float(p - half), float(p + half)


def _sample_seeds(s: int, samples: int, rng: np.random.Generator) -> np.ndarray | list[int]:
    if batchable(s):
        if s == 0:
            return np.zeros(samples, dtype=np.uint64)
        return rng.integers(0, 1 << s, size=samples, dtype=np.uint64)
    nbytes = (s + 7) // 8
    return [int.from_bytes(rng.bytes(nbytes), "little") & mask(s) for _ in range(samples)]


def _count_outputs(B: ObliviousBranchingProgram, outputs: Any) -> int:
    if isinstance(outputs, np.ndarray) and outputs.dtype == np.uint64:
        return int(np.count_nonzero(evaluate_many(B, outputs)))
    return sum(evaluate(B, int(x)) for x in outputs)


def sampled_fooling_error(
    B: ObliviousBranchingProgram,
    G: SeedGenerator,
    samples: int = 10**6,
    rng_seed: int = 0,
    *,
    program_id: str = "program",
    generator_id: str = "generator",
    input_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    confidence: float = DEFAULT_CONFIDENCE,
    ci_method: CiMethod = "normal",
) -> FoolingReport:
    """Monte Carlo estimate of the generator side; the uniform side is exact when possible.

    The error interval shifts the generator-probability interval by the
    uniform probability; a sampled uniform side widens it by its own
    half-width.

    Raises:
        IncompatibleDimensionsError: If the generator's output length is not ``n``.
        ValueError: If ``samples < 10^4``.
    """
    _check_dimensions(B, G)
    if samples < 10**4:
        raise ValueError(f"Sampled fooling needs at least 10^4 samples, got {samples}")
    started = time.perf_counter()
    rng = np.random.default_rng(rng_seed)
    uniform = acceptance_probability_uniform(
        B, exhaustive_cap=input_cap, samples=samples, rng_seed=rng_seed + 1
    )
    seeds = _sample_seeds(G.s, samples, rng)
    if isinstance(seeds, np.ndarray) and batchable(G.output_length):
        outputs: Any = G.expand_many(seeds)
    else:
        outputs = [G.expand(int(seed)) for seed in seeds]
    hits = _count_outputs(B, outputs)

    g_low, g_high = proportion_interval(hits, samples, confidence, ci_method)
    pu = float(uniform.probability)
    slack = 0.0
    if not uniform.exact:
        u_low, u_high = proportion_interval(
            uniform.accepting_count, uniform.total_count, confidence, ci_method
        )
        slack = (u_high - u_low) / 2
    low, high = g_low - pu - slack, g_high - pu + slack
    if low <= 0 <= high:
        ci = (0.0, max(-low, high))
    else:
        ci = (min(abs(low), abs(high)), max(abs(low), abs(high)))

    report = FoolingReport(
        program_id=program_id,
        generator_id=generator_id,
        method="sampled",
        n=B.n,
        s=G.s,
        uniform=uniform,
        generator_accepting=hits,
        generator_total=samples,
        eps=G.eps,
        samples=samples,
        confidence=confidence,
        ci_method=ci_method,
        ci_low=ci[0],
        ci_high=ci[1],
        runtime_seconds=time.perf_counter() - started,
    )
    if report.eps_inside_ci:
        logger.warning(
            "%s vs %s: eps=%g lies inside the %g%% interval [%g, %g]",
            program_id,
            generator_id,
            G.eps,
            confidence * 100,
            ci[0],
            ci[1],
        )
    return report
