"""Tests for exact and sampled fooling measurements."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pytest
from readk_prg._generators import Mode, build_inw, build_read_k_generator
from readk_prg._harness import (
    FoolingReport,
    IncompatibleDimensionsError,
    TooLargeForExhaustiveError,
    exact_fooling_error,
    proportion_interval,
    sampled_fooling_error,
)
from readk_prg._programs import (
    AcceptanceResult,
    build_constant,
    build_parity,
    random_obp,
)
from readk_prg._sequences import two_pass


@dataclass(frozen=True)
class ZeroGenerator:
    """Always outputs the all-zero string."""

    output_length: int
    s: int = 2
    eps: float = 0.1

    def expand(self, seed: int) -> int:
        return 0

    def expand_many(self, seeds: np.ndarray) -> np.ndarray:
        return np.zeros(len(seeds), dtype=np.uint64)


def test_uniform_generator_has_zero_error():
    """Test the identity generator fools every program exactly."""
    B = random_obp(two_pass([3, 0, 2, 1]).elems, 4, 4, rng_seed=2)

    report = exact_fooling_error(B, build_inw(4, 4, 4, 0.1, Mode.UNIFORM))

    assert report.method == "exhaustive"
    assert report.error == 0
    assert report.within()
    assert report.generator_total == 16


def test_constant_program_has_zero_error():
    """Test constant programs are fooled by anything."""
    report = exact_fooling_error(build_constant(3, True, [0, 1, 2]), ZeroGenerator(3))

    assert report.error == 0
    assert report.uniform_probability == report.generator_probability == 1


def test_biased_generator_error():
    """Test the all-zero generator misses parity by one half."""
    report = exact_fooling_error(build_parity(2), ZeroGenerator(2))

    assert report.uniform_probability == Fraction(1, 2)
    assert report.generator_probability == 0
    assert report.error == Fraction(1, 2)
    assert not report.within()
    assert report.within(0.5)


def test_toy_generator_cancels_parity():
    """Test toy-mode leaves share x and every key an even number of times."""
    G = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2)

    report = exact_fooling_error(build_parity(8), G)

    assert report.generator_accepting == 0
    assert report.error == Fraction(1, 2)


def test_threads_do_not_change_the_report():
    """Test chunked counting is independent of the thread count."""
    B = random_obp(two_pass([1, 0, 2, 3, 5, 4]).elems, 6, 4, rng_seed=3)
    G = build_read_k_generator(two_pass([1, 0, 2, 3, 5, 4]), 4, 0.1, Mode.TOY, toy_aux=2)

    assert exact_fooling_error(B, G, threads=1) == exact_fooling_error(B, G, threads=3)


def test_seed_cap():
    """Test seeds beyond the cap point at sampling."""
    G = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2)

    with pytest.raises(TooLargeForExhaustiveError, match="--samples"):
        exact_fooling_error(build_parity(8), G, seed_cap=3)


def test_input_cap_only_for_repeated_reads():
    """Test read-once programs are counted exactly beyond the input cap."""
    G = build_inw(8, 4, 4, 0.1, Mode.UNIFORM)
    read_twice = build_parity(8, order=two_pass(list(range(8))).elems)

    assert exact_fooling_error(build_parity(8), G, input_cap=4).error == 0
    with pytest.raises(TooLargeForExhaustiveError, match="input cap"):
        exact_fooling_error(read_twice, G, input_cap=4)


def test_dimension_mismatch():
    """Test the generator must output exactly n bits."""
    with pytest.raises(IncompatibleDimensionsError, match="outputs 3 bits"):
        exact_fooling_error(build_parity(2), ZeroGenerator(3))


def test_report_dict_is_reproducible():
    """Test the report dict omits runtime and writes exact fractions as strings."""
    report = exact_fooling_error(build_parity(2), ZeroGenerator(2), program_id="p", generator_id="g")

    data = report.to_dict()

    assert "runtime_seconds" not in data
    assert data["error"] == "1/2"
    assert data["error_float"] == 0.5
    assert (data["program_id"], data["generator_id"]) == ("p", "g")


@pytest.mark.parametrize("method", ["normal", "wilson", "exact"])
def test_proportion_interval_contains_estimate(method: str):
    """Test every interval brackets the observed proportion."""
    low, high = proportion_interval(30, 100, 0.95, method)

    assert low < 0.3 < high


def test_wald_interval():
    """Test the normal interval p +- z sqrt(p(1-p)/n)."""
    low, high = proportion_interval(50, 100, 0.95, "normal")

    assert low == pytest.approx(0.5 - 1.959964 * 0.05, abs=1e-6)
    assert high == pytest.approx(0.5 + 1.959964 * 0.05, abs=1e-6)


def test_exact_interval_zero_hits():
    """Test Clopper-Pearson at zero hits."""
    low, high = proportion_interval(0, 100, 0.95, "exact")

    assert low == 0.0
    assert high == pytest.approx(1 - 0.025 ** (1 / 100), rel=1e-3)


def test_sampled_needs_enough_samples():
    """Test fewer than 10^4 samples are refused."""
    with pytest.raises(ValueError, match="10\\^4"):
        sampled_fooling_error(build_parity(2), ZeroGenerator(2), samples=100)


def test_sampled_biased_generator():
    """Test a certain gap yields a degenerate interval at the gap."""
    report = sampled_fooling_error(build_parity(2), ZeroGenerator(2), samples=10_000)

    assert report.method == "sampled"
    assert report.uniform.exact
    assert report.error == Fraction(1, 2)
    assert report.ci_low == pytest.approx(0.5)
    assert report.ci_high == pytest.approx(0.5)
    assert report.ci_half_width == pytest.approx(0.0)
    assert not report.eps_inside_ci


def test_sampled_is_deterministic():
    """Test the same seed reproduces the same report."""
    B = random_obp(two_pass([2, 0, 1, 3]).elems, 4, 4, rng_seed=4)
    G = build_read_k_generator(two_pass([2, 0, 1, 3]), 4, 0.1, Mode.HASH)

    first = sampled_fooling_error(B, G, samples=20_000, rng_seed=9, ci_method="wilson")
    second = sampled_fooling_error(B, G, samples=20_000, rng_seed=9, ci_method="wilson")

    assert first == second
    assert first.ci_method == "wilson"
    assert first.ci_low is not None and first.ci_high is not None
    assert first.ci_low <= float(first.error) <= first.ci_high


def test_sampled_uniform_side():
    """Test a program above the input cap is sampled on the uniform side too."""
    B = random_obp(two_pass(list(range(6))).elems, 6, 4, rng_seed=5)
    G = build_inw(6, 4, 4, 0.1, Mode.UNIFORM)

    report = sampled_fooling_error(B, G, samples=10_000, input_cap=2)

    assert not report.uniform.exact
    assert report.uniform.total_count == 10_000
    assert report.ci_low is not None and report.ci_high is not None
    assert report.ci_low <= float(report.error) <= report.ci_high


def test_eps_inside_ci():
    """Test the flag raised when the bound falls inside the interval."""
    report = FoolingReport(
        program_id="p",
        generator_id="g",
        method="sampled",
        n=2,
        s=2,
        uniform=AcceptanceResult(2, 4, "dp"),
        generator_accepting=3,
        generator_total=4,
        eps=0.1,
        ci_low=0.05,
        ci_high=0.2,
    )

    assert report.eps_inside_ci
    assert report.ci_half_width == pytest.approx(0.075)


@pytest.mark.parametrize("rng_seed", range(5))
def test_hash_generator_fools_read_once_programs(rng_seed: int):
    """Test random width-4 read-once programs stay within eps of uniform."""
    B = random_obp(list(range(8)), 8, 4, rng_seed=rng_seed)
    G = build_inw(8, 2, 4, 0.1, Mode.HASH)

    report = exact_fooling_error(B, G)

    assert report.method == "exhaustive"
    assert report.within()


@pytest.mark.parametrize("rng_seed", range(3))
def test_hash_generator_fools_two_identical_passes(rng_seed: int):
    """Test a program reading 1..n twice is fooled with two visits per cell."""
    B = random_obp(list(range(8)) * 2, 8, 4, rng_seed=rng_seed)
    G = build_inw(8, 2, 4, 0.1, Mode.HASH)

    report = exact_fooling_error(B, G)

    assert report.generator_total == 1 << G.s
    assert report.within()
