"""Tests for the variable partition."""

import math

import numpy as np
import pytest
from readk_prg._harness import random_read_k_sequence
from readk_prg._sequences import (
    InvalidPartitionError,
    canonical_relabel,
    certify_part,
    is_per_read_monotone,
    k_pass_sequence,
    partition_variables,
    partition_size_bound,
    restrict,
    two_pass,
    validate,
    verify_partition,
)


def test_reversal_is_one_part():
    """Test a sequence that passes both checkers stays whole."""
    partition = partition_variables(two_pass([3, 2, 1, 0]))

    assert partition.t == 1
    assert partition.parts == ((0, 1, 2, 3),)
    assert partition.k_pass


def test_two_pass_partition_is_valid():
    """Test a shuffled two-pass sequence splits into certified parts."""
    s = two_pass([2, 0, 3, 1, 5, 4])

    partition = partition_variables(s)

    verify_partition(s, partition.parts)
    assert partition.k_pass
    assert len(partition.certificates) == partition.t
    assert sorted(v for p in partition.parts for v in p) == list(range(6))


def test_non_pass_sequence_is_split_until_interleaving():
    """Test sequences outside the k-pass family are split at interleaving failures."""
    s = validate([0, 1, 0, 2, 1, 2], 3, 2)

    partition = partition_variables(s)

    assert not partition.k_pass
    assert partition.t >= 2
    verify_partition(s, partition.parts)


@pytest.mark.parametrize("k", [2, 3])
def test_random_sequences_partition(k: int):
    """Test random read-k sequences always receive a certified partition."""
    rng = np.random.default_rng(7)
    for _ in range(25):
        s = random_read_k_sequence(8, k, rng)

        partition = partition_variables(s)

        verify_partition(s, partition.parts)
        assert [p[0] for p in partition.parts] == sorted(p[0] for p in partition.parts)


def test_verify_rejects_overlap():
    """Test overlapping parts are rejected."""
    s = two_pass([0, 1, 2])

    with pytest.raises(InvalidPartitionError, match="two parts"):
        verify_partition(s, ((0, 1), (1, 2)))


def test_verify_rejects_missing_variable():
    """Test coverage is required."""
    with pytest.raises(InvalidPartitionError, match="not covered"):
        verify_partition(two_pass([0, 1, 2]), ((0, 1),))


def test_verify_rejects_empty_part():
    """Test empty parts are rejected."""
    with pytest.raises(InvalidPartitionError, match="Empty part"):
        verify_partition(two_pass([0, 1]), ((0, 1), ()))


def test_certify_rejects_failing_part():
    """Test certification reports the failing checker."""
    s = validate([0, 1, 0, 2, 1, 2], 3, 2)

    with pytest.raises(InvalidPartitionError, match="interleaving"):
        certify_part(s, (0, 1, 2))


def test_partition_size_bound():
    """Test the part-count envelope."""
    assert partition_size_bound(0, 2) == 0.0
    assert partition_size_bound(16, 2) == pytest.approx(4 * math.exp(4))
    assert partition_size_bound(5, 1) == pytest.approx(math.e)


@pytest.mark.parametrize("n", [16, 400])
def test_repeated_pass_is_one_part(n: int):
    """Test a permutation read twice in the same order is a single part."""
    perm = [int(v) for v in np.random.default_rng(n).permutation(n)]
    s = k_pass_sequence([perm, perm])

    partition = partition_variables(s)

    assert partition.t == 1
    assert partition.parts == (tuple(range(n)),)
    verify_partition(s, partition.parts)


def test_parts_keep_original_labels():
    """Test parts and certificate blocks are reported in the input labels."""
    s = k_pass_sequence([[2, 0, 1], [2, 0, 1]])

    partition = partition_variables(s)

    assert partition.parts == ((0, 1, 2),)
    cert = partition.certificates[0]
    assert cert.variables == (0, 1, 2)
    assert cert.interleaving[(0, 1)].blocks == (frozenset({0, 1, 2}),)


def test_relabeled_input_partitions_like_canonical():
    """Test renaming variables renames the parts and nothing else."""
    rng = np.random.default_rng(3)
    for _ in range(10):
        s = random_read_k_sequence(9, 2, rng)
        canon, mapping = canonical_relabel(s)
        original = {new: old for old, new in mapping.items()}

        relabeled = {tuple(sorted(original[v] for v in p)) for p in partition_variables(canon).parts}

        assert set(partition_variables(s).parts) == relabeled
        for part in partition_variables(s).parts:
            assert is_per_read_monotone(restrict(canon, [mapping[v] for v in part])).accepted
