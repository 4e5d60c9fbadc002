"""Tests for the per-read-monotone and interleaving checkers."""

import pytest
from readk_prg._sequences import (
    Direction,
    NotPerReadMonotoneError,
    ReadKSequence,
    enumerate_read_k_sequences,
    exhaustive_interleaving_blocks,
    has_no_upward_jumps,
    is_2_regularly_interleaving,
    is_k_regularly_interleaving,
    is_per_read_monotone,
    monotone_decomposition,
    two_pass,
    validate,
)


def test_interleaving_single_block():
    """Test a sequence whose first and second reads form one block."""
    result = is_2_regularly_interleaving(validate([0, 1, 0, 1], 2, 2))

    assert result
    assert result.certificate is not None
    assert result.certificate.blocks == (frozenset({0, 1}),)
    assert result.certificate.boundaries == (4,)


def test_interleaving_forced_blocks():
    """Test adjacent pairs split into one block each."""
    result = is_2_regularly_interleaving(validate([0, 0, 1, 1], 2, 2))

    assert result.accepted
    assert result.certificate is not None
    assert result.certificate.blocks == (frozenset({0}), frozenset({1}))
    assert result.certificate.boundaries == (2, 4)


def test_interleaving_rejection_witness():
    """Test the witness points at the first open that cannot close the block."""
    s2 = validate([0, 1, 0, 2, 1, 2], 3, 2)

    result = is_2_regularly_interleaving(s2)

    assert not result
    assert result.witness is not None
    assert result.witness.position == 3
    assert result.witness.firsts == frozenset({0, 1})
    assert result.witness.seconds == frozenset({0})
    assert exhaustive_interleaving_blocks(s2) == []


def test_interleaving_requires_read_two():
    """Test the read-2 checker rejects other multiplicities."""
    with pytest.raises(ValueError, match="read-2"):
        is_2_regularly_interleaving(ReadKSequence(variables=(0,), k=1, elems=(0,)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_greedy_agrees_with_exhaustive(n: int):
    """Test greedy acceptance and certificate match the brute-force search."""
    for s in enumerate_read_k_sequences(n, 2):
        greedy = is_2_regularly_interleaving(s)
        found = exhaustive_interleaving_blocks(s)

        assert greedy.accepted == bool(found), s.elems
        if greedy.accepted:
            assert len(found) == 1
            assert greedy.certificate == found[0]


def test_k_interleaving_reports_failed_pair():
    """Test the first failing read pair is reported."""
    s = validate([0, 0, 1, 1, 0, 2, 2, 1, 2], 3, 3)

    accepted = is_k_regularly_interleaving(two_pass([2, 1, 0]))
    rejected = is_k_regularly_interleaving(s)

    assert accepted
    assert set(accepted.certificates) == {(0, 1)}
    assert not rejected
    assert rejected.failed_pair == (0, 2)
    assert set(rejected.certificates) == {(0, 1)}


def test_k_interleaving_read_once():
    """Test k = 1 sequences are accepted without certificates."""
    result = is_k_regularly_interleaving(validate([1, 0], 2, 1))

    assert result.accepted
    assert result.certificates == {}


def test_per_read_monotone_directions():
    """Test directions are reported per read."""
    result = is_per_read_monotone(two_pass([2, 1, 0]))

    assert result
    assert result.directions == (Direction.INCREASING, Direction.DECREASING)


def test_per_read_monotone_witness():
    """Test the violation names the read and the breaking pair."""
    result = is_per_read_monotone(validate([0, 2, 1, 0, 1, 2], 3, 2))

    assert not result
    assert result.witness is not None
    assert result.witness.read_index == 0
    assert result.witness.before == (0, 2)
    assert result.witness.after == (2, 1)


def test_monotone_decomposition_alternates():
    """Test segments follow direction changes."""
    s = two_pass([2, 1, 0])

    decomposition = monotone_decomposition(s)

    assert [(g.start, g.end, g.direction) for g in decomposition.segments] == [
        (0, 3, Direction.INCREASING),
        (3, 6, Direction.DECREASING),
    ]
    assert decomposition.read_boundaries == (0, 1)
    assert decomposition.pieces(s) == [(0, 1, 2), (2, 1, 0)]


def test_monotone_decomposition_merges_equal_directions():
    """Test consecutive increasing reads share one segment."""
    decomposition = monotone_decomposition(two_pass([0, 1, 2]))

    assert len(decomposition.segments) == 1
    assert decomposition.segments[0].end == 6


def test_monotone_decomposition_rejects_non_monotone():
    """Test decomposition needs a per-read-monotone sequence."""
    with pytest.raises(NotPerReadMonotoneError, match="Read 1"):
        monotone_decomposition(validate([0, 2, 1, 0, 1, 2], 3, 2))


def test_no_upward_jumps():
    """Test steps up by more than one rank are found."""
    assert has_no_upward_jumps(two_pass([0, 1, 2])) is None

    violation = has_no_upward_jumps(validate([0, 2, 1, 0, 1, 2], 3, 2))

    assert violation is not None
    assert violation.position == 0
    assert (violation.current, violation.following) == (0, 2)


def test_no_downward_jumps_when_decreasing():
    """Test the mirrored check for decreasing sequences."""
    s = validate([2, 1, 0], 3, 1)

    assert has_no_upward_jumps(s, Direction.DECREASING) is None
    assert has_no_upward_jumps(validate([2, 0, 1], 3, 1), Direction.DECREASING)
