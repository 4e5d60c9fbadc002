"""Tests for GF(2^L) arithmetic and the affine hash family."""

from collections import Counter

import numpy as np
import pytest
from readk_prg._generators import (
    affine_hash,
    gf_multiply,
    irreducible_polynomial,
    is_irreducible,
)


@pytest.mark.parametrize(
    ("poly", "expected"),
    [(0b10, True), (0b111, True), (0b101, False), (0b1011, True), (0b1001, False), (0b1, False)],
)
def test_is_irreducible(poly: int, expected: bool):
    """Test the Ben-Or check on small polynomials."""
    assert is_irreducible(poly) is expected


@pytest.mark.parametrize(("degree", "expected"), [(2, 0b111), (3, 0b1011), (8, 0x11B)])
def test_smallest_irreducible(degree: int, expected: int):
    """Test the numerically smallest irreducible polynomial is picked."""
    assert irreducible_polynomial(degree) == expected


def test_irreducible_needs_positive_degree():
    """Test degree zero is rejected."""
    with pytest.raises(ValueError, match="positive"):
        irreducible_polynomial(0)


def test_gf_multiply_known_products():
    """Test products in GF(2^8) modulo x^8 + x^4 + x^3 + x + 1."""
    assert gf_multiply(0x57, 0x83, 8, 0x11B) == 0xC1
    assert gf_multiply(0x53, 0xCA, 8, 0x11B) == 0x01
    assert gf_multiply(0x57, 0x01, 8, 0x11B) == 0x57


def test_gf_multiply_arrays_match_ints():
    """Test the array path agrees with the int path."""
    a = np.arange(16, dtype=np.uint64)
    b = np.full(16, 7, dtype=np.uint64)

    batched = gf_multiply(a, b, 4, irreducible_polynomial(4))

    assert batched.tolist() == [
        gf_multiply(int(x), 7, 4, irreducible_polynomial(4)) for x in range(16)
    ]


def test_affine_hash_is_pairwise_independent():
    """Test every output pair is hit exactly once over all keys."""
    degree = 3
    for x, y in [(0, 1), (2, 5), (7, 3)]:
        pairs = Counter(
            (affine_hash(x, key, degree), affine_hash(y, key, degree))
            for key in range(1 << (2 * degree))
        )
        assert len(pairs) == 1 << (2 * degree)
        assert set(pairs.values()) == {1}
