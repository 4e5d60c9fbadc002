"""Tests for the recursive seed-expansion generator."""

from collections import Counter

import numpy as np
import pytest
from readk_prg._generators import (
    InvalidParamsError,
    Mode,
    SeedLengthMismatchError,
    build_inw,
    communication_budget,
    expand,
)
from readk_prg._generators.inw import tree_depth


def test_communication_budget():
    """Test the per-level budget d*ceil(log2 w) + ceil(log2(2n/eps))."""
    assert communication_budget(8, 4, 4, 0.1) == 16
    assert communication_budget(1, 1, 2, 0.5) == 3


@pytest.mark.parametrize(("n_out", "block", "expected"), [(8, 1, 3), (8, 8, 0), (5, 2, 2), (1, 1, 0)])
def test_tree_depth(n_out: int, block: int, expected: int):
    """Test the smallest depth whose leaves fit the block."""
    assert tree_depth(n_out, block) == expected


def test_toy_layout():
    """Test toy mode uses a one-bit primary seed and toy_aux-bit keys."""
    G = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2)

    assert (G.block, G.depth) == (1, 3)
    assert G.aux_widths == (2, 2, 2)
    assert G.key_offsets == (1, 3, 5)
    assert G.s == 7
    assert G.output_length == 8


def test_toy_expansion_by_hand():
    """Test the left child copies x and the right child mixes in the key."""
    G = build_inw(2, 1, 2, 0.5, Mode.TOY, toy_aux=1)

    assert G.s == 2
    assert [expand(G, seed) for seed in range(4)] == [0, 3, 2, 1]


def test_uniform_mode_is_identity():
    """Test uniform mode passes the seed through."""
    G = build_inw(5, 2, 4, 0.1, Mode.UNIFORM)

    assert G.s == 5
    assert G.depth == 0
    assert [expand(G, x) for x in range(32)] == list(range(32))


def test_hash_mode_layout():
    """Test hash keys are twice the block."""
    G = build_inw(64, 4, 4, 0.1, Mode.HASH)

    assert G.block == communication_budget(64, 4, 4, 0.1)
    assert set(G.aux_widths) == {2 * G.block}
    assert G.s == G.block + G.depth * 2 * G.block


def test_expander_mode_layout():
    """Test expander keys are 3p bits and the walk is sized for the budget."""
    G = build_inw(64, 4, 4, 0.1, Mode.EXPANDER)

    assert G.expander is not None
    assert set(G.aux_widths) == {G.expander.label_bits}
    assert G.expander.spectral_bound <= 2.0 ** -G.block


@pytest.mark.parametrize("mode", [Mode.TOY, Mode.HASH, Mode.EXPANDER])
def test_expand_many_matches_expand(mode: Mode):
    """Test batched expansion agrees with scalar expansion."""
    G = build_inw(12, 2, 2, 0.25, mode, toy_aux=2)
    rng = np.random.default_rng(0)
    seeds = rng.integers(0, 1 << min(G.s, 62), size=64, dtype=np.uint64)

    batched = G.expand_many(seeds)

    assert [int(v) for v in batched] == [G.expand(int(x)) for x in seeds]


def test_toy_marginals_are_uniform():
    """Test every output bit is unbiased over all seeds."""
    G = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2)
    outputs = G.expand_many(np.arange(1 << G.s, dtype=np.uint64))

    ones = Counter(i for x in outputs for i in range(8) if (int(x) >> i) & 1)

    assert set(ones.values()) == {(1 << G.s) // 2}


def test_seed_length_mismatch():
    """Test seeds must have exactly s bits."""
    G = build_inw(4, 2, 2, 0.5, Mode.TOY, toy_aux=1)

    with pytest.raises(SeedLengthMismatchError):
        expand(G, 1 << G.s)
    with pytest.raises(SeedLengthMismatchError):
        expand(G, [0, 1])
    with pytest.raises(SeedLengthMismatchError):
        G.expand_many(np.array([1 << G.s], dtype=np.uint64))


def test_bit_list_seed():
    """Test a 0/1 seed list equals its packed int."""
    G = build_inw(4, 2, 2, 0.5, Mode.TOY, toy_aux=1)

    assert expand(G, [1, 0, 1]) == expand(G, 0b101)


@pytest.mark.parametrize(
    ("args", "message"),
    [
        ((0, 1, 2, 0.1), "n_out"),
        ((4, 0, 2, 0.1), "Visit bound"),
        ((4, 1, 1, 0.1), "Width"),
        ((4, 1, 2, 1.0), "eps"),
        ((4, 1, 2, 0.1, "bogus"), "Unknown mode"),
        ((4, 1, 2, 0.1, Mode.TOY, 0), "toy_aux"),
    ],
)
def test_invalid_params(args: tuple, message: str):
    """Test out-of-range parameters raise InvalidParamsError."""
    with pytest.raises(InvalidParamsError, match=message):
        build_inw(*args)


def test_to_dict():
    """Test the descriptor dict carries parameters and layout."""
    data = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=2).to_dict()

    assert data["type"] == "inw"
    assert data["mode"] == "toy"
    assert data["aux_widths"] == [2, 2, 2]
    assert data["s"] == 7


@pytest.mark.parametrize("toy_aux", [1, 2])
def test_every_seed_bit_matters(toy_aux: int):
    """Test flipping any single seed bit changes the output for some seed."""
    G = build_inw(8, 4, 4, 0.1, Mode.TOY, toy_aux=toy_aux)
    seeds = np.arange(1 << G.s, dtype=np.uint64)
    outputs = G.expand_many(seeds)

    for bit in range(G.s):
        flipped = outputs[seeds ^ np.uint64(1 << bit)]
        assert (flipped != outputs).any(), bit
