"""Bit-vector helpers shared by programs, generators and the harness.

A bit vector is an ``int`` whose bit ``i`` holds coordinate ``i``. The same
helpers accept ``numpy.uint64`` arrays where noted, for batched paths whose
widths fit in 63 bits.
"""

from collections.abc import Sequence
from typing import TypeVar

import numpy as np

BATCH_WIDTH_LIMIT = 63

BitArray = TypeVar("BitArray", int, np.ndarray)


def mask(width: int) -> int:
    return (1 << width) - 1


def bits_to_int(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence, coordinate ``i`` into bit ``i``."""
    value = 0
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"Bit {i} is {b!r}, expected 0 or 1")
        value |= b << i
    return value


def spread_bits(values: BitArray, coords: Sequence[int]) -> BitArray:
    """Move bit ``j`` of ``values`` to bit ``coords[j]``.

    Works on ints and on ``uint64`` arrays.
    """
    out = values & 0
    for j, c in enumerate(coords):
        out = out | (((values >> j) & 1) << c)
    return out


def batchable(*widths: int) -> bool:
    """Whether every width fits the ``uint64`` batched paths."""
    return all(w <= BATCH_WIDTH_LIMIT for w in widths)
