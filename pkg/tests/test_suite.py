"""Tests for the structural suites."""

import numpy as np
import pytest
from readk_prg._harness import (
    SuiteResult,
    partition_battery,
    random_read_k_sequence,
    sequence_count,
    shrink,
    structural_suite,
)
from readk_prg._harness.suite import check_sequence
from readk_prg._sequences import (
    InterleavingCertificate,
    InterleavingResult,
    ReadKSequence,
    canonical_relabel,
    is_2_regularly_interleaving,
    k_pass_sequence,
    partition_variables,
    restrict,
    two_pass,
    validate,
)


def _accept_everything(s2: ReadKSequence) -> InterleavingResult:
    return InterleavingResult(
        accepted=True, certificate=InterleavingCertificate(blocks=(), boundaries=())
    )


@pytest.mark.parametrize(("n", "k", "expected"), [(3, 2, 90), (2, 3, 20), (4, 2, 2520)])
def test_sequence_count(n: int, k: int, expected: int):
    """Test the multinomial count."""
    assert sequence_count(n, k) == expected


def test_structural_suite_passes_read_two():
    """Test every property holds over all read-2 sequences with n <= 3."""
    result = structural_suite(3, 2)

    assert result.passed, result.failed_properties
    assert result.instances["sequences_n3"] == 90
    assert result.instances["sequences_n1"] == 1
    assert result.instances["accepted"] > 0
    assert result.properties["greedy_matches_exhaustive"].checked == 1 + 6 + 90
    assert "visits_within_2k" in result.properties
    assert "no_upward_jumps" in result.properties


def test_structural_suite_passes_read_three():
    """Test read-3 sequences with n <= 2."""
    result = structural_suite(2, 3)

    assert result.passed, result.failed_properties
    assert result.instances["sequences_n2"] == 20


def test_planted_sequences_are_checked():
    """Test planted sequences must pass both checkers."""
    good = structural_suite(1, 2, planted=[two_pass([2, 1, 0])])
    bad = structural_suite(1, 2, planted=[validate([0, 1, 0, 2, 1, 2], 3, 2)])

    assert good.passed
    assert good.instances["planted"] == 1
    assert bad.failed_properties == ["planted_accepted"]
    counterexample = bad.properties["planted_accepted"].counterexample
    assert counterexample is not None
    assert counterexample.data["original"] == [1, 2, 1, 3, 2, 3]


def test_broken_checker_is_caught():
    """Test a checker that accepts everything disagrees with brute force."""
    result = structural_suite(2, 2, pair_checker=_accept_everything)

    assert not result.passed
    assert "greedy_matches_exhaustive" in result.failed_properties
    counterexample = result.properties["greedy_matches_exhaustive"].counterexample
    assert counterexample is not None
    assert counterexample.data["n"] <= 2


def test_shrink_removes_irrelevant_variables():
    """Test shrinking keeps only what the failure needs."""
    s = validate([0, 1, 0, 2, 1, 2, 3, 3], 4, 2)

    small = shrink(s, lambda t: t.n >= 2)

    assert small.n == 2


def test_partition_battery():
    """Test random partitions are sound and within the visit bound."""
    result = partition_battery(6, ns=[5, 8], ks=[2, 3], rng_seed=1)

    assert result.passed, result.failed_properties
    assert result.properties["partition_sound"].checked == 24


def test_sampled_read_three_walk_bounds():
    """Test read-3 sequences past exhaustive sizes keep both walk properties."""
    rng = np.random.default_rng(9)
    result = SuiteResult(name="sampled")
    for n in (4, 6, 8):
        s, _ = canonical_relabel(random_read_k_sequence(n, 3, rng))
        for part in partition_variables(s).parts:
            check_sequence(canonical_relabel(restrict(s, part))[0], result, is_2_regularly_interleaving)
        forward, backward = list(range(n)), list(range(n - 1, -1, -1))
        check_sequence(k_pass_sequence([forward] * 3), result, is_2_regularly_interleaving)
        check_sequence(k_pass_sequence([backward] * 3), result, is_2_regularly_interleaving)
        check_sequence(k_pass_sequence([forward, backward, forward]), result, is_2_regularly_interleaving)

    assert result.passed, result.failed_properties
    assert result.properties["visits_within_2k"].checked >= 9
    assert result.properties["no_upward_jumps"].checked >= 6
