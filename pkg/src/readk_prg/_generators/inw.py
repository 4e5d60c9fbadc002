"""Recursive seed-expansion generator for multi-visit head walks.

The output positions ``[0, n_out)`` are covered by a balanced binary tree of
uniform depth ``D``; leaves hold at most ``block`` positions. The seed is
laid out as::

    [ x : block bits ][ key_1 ][ key_2 ] ... [ key_D ]

where ``key_h`` mixes at height ``h`` (height 1 sits just above the leaves).
A node at height ``h`` receiving ``x`` hands ``x`` to its left child and
``mix_h(x, key_h)`` to its right child; a leaf emits the low bits of ``x``.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np

from readk_prg._bits import BitArray, batchable, bits_to_int, mask
from readk_prg._generators.expander import (
    BASE_SPECTRAL_BOUND,
    LABEL_BITS,
    ExpanderSpec,
    walk_embedded,
)
from readk_prg._generators.hashing import affine_hash

logger = logging.getLogger(__name__)

DEFAULT_TOY_AUX = 4


class InvalidParamsError(ValueError):
    """Raised when generator parameters are out of range."""


class SeedLengthMismatchError(ValueError):
    """Raised when a seed does not have exactly ``s`` bits."""


class Mode(StrEnum):
    EXPANDER = "expander"
    HASH = "hash"
    TOY = "toy"
    UNIFORM = "uniform"


def communication_budget(n_out: int, d: int, w: int, eps: float) -> int:
    """Bits a level must carry: ``d * ceil(log2 w) + ceil(log2(2 n_out / eps))``."""
    return d * math.ceil(math.log2(w)) + math.ceil(math.log2(2 * n_out / eps))


def tree_depth(n_out: int, block: int) -> int:
    """Smallest ``D`` with ``ceil(n_out / 2^D) <= block``."""
    depth = 0
    while -(-n_out // (1 << depth)) > block:
        depth += 1
    return depth


def coerce_seed(seed: int | list[int] | tuple[int, ...], s: int) -> int:
    """Accept an ``s``-bit int or a 0/1 sequence of length ``s``.

    Raises:
        SeedLengthMismatchError: If the seed does not have ``s`` bits.
    """
    if isinstance(seed, int):
        if seed < 0 or seed >> s:
            raise SeedLengthMismatchError(f"Seed {seed} does not fit in s={s} bits")
        return seed
    if len(seed) != s:
        raise SeedLengthMismatchError(f"Seed has {len(seed)} bits, expected s={s}")
    return bits_to_int(seed)


@dataclass(frozen=True)
class InwDescriptor:
    """Seed layout and parameters of one recursive generator.

    Attributes:
        n_out: Output bits.
        d: Visit bound the generator is sized for.
        w: Width parameter.
        eps: Error budget.
        mode: Mixing primitive.
        block: Bits of the primary sub-seed ``x``; leaves emit at most this many.
        depth: Tree depth ``D``.
        aux_widths: Key width per height ``1 .. D``.
        toy_aux: Key width used in toy mode.
        expander: Powered expander used in expander mode.
    """

    n_out: int
    d: int
    w: int
    eps: float
    mode: Mode
    block: int
    depth: int
    aux_widths: tuple[int, ...]
    toy_aux: int = DEFAULT_TOY_AUX
    expander: ExpanderSpec | None = None

    @property
    def s(self) -> int:
        return self.block + sum(self.aux_widths)

    @property
    def output_length(self) -> int:
        return self.n_out

    @property
    def key_offsets(self) -> tuple[int, ...]:
        offsets = []
        at = self.block
        for width in self.aux_widths:
            offsets.append(at)
            at += width
        return tuple(offsets)

    def expand(self, seed: int | list[int] | tuple[int, ...]) -> int:
        return expand(self, seed)

    def expand_many(self, seeds: np.ndarray) -> np.ndarray:
        return expand_many(self, seeds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "inw",
            "n_out": self.n_out,
            "d": self.d,
            "w": self.w,
            "eps": self.eps,
            "mode": self.mode.value,
            "toy_aux": self.toy_aux,
            "block": self.block,
            "depth": self.depth,
            "aux_widths": list(self.aux_widths),
            "s": self.s,
        }


def build_inw(
    n_out: int,
    d: int,
    w: int,
    eps: float,
    mode: Mode | str = Mode.HASH,
    toy_aux: int = DEFAULT_TOY_AUX,
) -> InwDescriptor:
    """Lay out a generator for ``n_out`` bits.

    Hash and expander modes use a primary sub-seed of ``B`` bits, ``B`` being
    :func:`communication_budget`; hash keys are ``2B`` bits (an affine map
    over GF(2^B)) and expander keys ``3p`` bits with ``p`` the powering that
    brings the spectral bound below ``2^-B``. Toy mode uses a 1-bit primary
    sub-seed and ``toy_aux``-bit XOR keys. Uniform mode is the identity on
    ``n_out`` seed bits.

    Raises:
        InvalidParamsError: If ``n_out < 1``, ``d < 1``, ``w < 2``,
            ``eps`` is outside ``(0, 1)`` or ``toy_aux < 1``.
    """
    try:
        mode = Mode(mode)
    except ValueError as e:
        raise InvalidParamsError(f"Unknown mode {mode!r}") from e
    if n_out < 1:
        raise InvalidParamsError(f"n_out must be at least 1, got {n_out}")
    if d < 1:
        raise InvalidParamsError(f"Visit bound d must be at least 1, got {d}")
    if w < 2:
        raise InvalidParamsError(f"Width must be at least 2, got {w}")
    if not 0 < eps < 1:
        raise InvalidParamsError(f"eps must lie in (0, 1), got {eps}")
    if toy_aux < 1:
        raise InvalidParamsError(f"toy_aux must be at least 1, got {toy_aux}")

    expander: ExpanderSpec | None = None
    if mode is Mode.UNIFORM:
        block, key_width = n_out, 0
    elif mode is Mode.TOY:
        block, key_width = 1, toy_aux
    else:
        budget = communication_budget(n_out, d, w, eps)
        block = min(budget, n_out)
        if mode is Mode.HASH:
            key_width = 2 * block
        else:
            half = -(-block // 2)
            p = math.ceil(budget / -math.log2(BASE_SPECTRAL_BOUND))
            expander = ExpanderSpec(m=1 << half, p=p)
            key_width = LABEL_BITS * p

    depth = tree_depth(n_out, block)
    descriptor = InwDescriptor(
        n_out=n_out,
        d=d,
        w=w,
        eps=eps,
        mode=mode,
        block=block,
        depth=depth,
        aux_widths=(key_width,) * depth,
        toy_aux=toy_aux,
        expander=expander,
    )
    logger.debug(
        "INW %s n_out=%d d=%d w=%d eps=%g: block=%d depth=%d s=%d",
        mode,
        n_out,
        d,
        w,
        eps,
        block,
        depth,
        descriptor.s,
    )
    return descriptor


def _fold(key: BitArray, key_width: int, block: int) -> BitArray:
    out = key & 0
    for at in range(0, key_width, block):
        out = out ^ ((key >> at) & mask(block))
    return out


def mix(G: InwDescriptor, x: BitArray, key: BitArray) -> BitArray:
    """The right-child sub-seed derived from ``x`` and one level key."""
    if G.mode is Mode.TOY:
        return x ^ _fold(key, G.toy_aux, G.block)
    if G.mode is Mode.HASH:
        return affine_hash(x, key, G.block)
    if G.mode is Mode.EXPANDER:
        assert G.expander is not None
        return walk_embedded(x, key, G.expander, G.block)
    return x


def _expand_node(
    G: InwDescriptor, seed: BitArray, x: BitArray, height: int, lo: int, hi: int
) -> BitArray:
    if height == 0:
        return (x & mask(hi - lo)) << lo
    mid = lo + -(-(hi - lo) // 2)
    offset = G.key_offsets[height - 1]
    key = (seed >> offset) & mask(G.aux_widths[height - 1])
    left = _expand_node(G, seed, x, height - 1, lo, mid)
    right = _expand_node(G, seed, mix(G, x, key), height - 1, mid, hi)
    return left | right


def expand(G: InwDescriptor, seed: int | list[int] | tuple[int, ...]) -> int:
    """Expand an ``s``-bit seed to ``n_out`` bits.

    Raises:
        SeedLengthMismatchError: If the seed does not have ``s`` bits.
    """
    value = coerce_seed(seed, G.s)
    return _expand_node(G, value, value & mask(G.block), G.depth, 0, G.n_out)


def expand_many(G: InwDescriptor, seeds: np.ndarray) -> np.ndarray:
    """Batched :func:`expand` over a ``uint64`` array of seeds.

    Falls back to one expansion per seed (object array) when ``s`` or
    ``n_out`` exceeds 63 bits.
    """
    if not batchable(G.s, G.n_out):
        return np.array([expand(G, int(v)) for v in seeds], dtype=object)
    seeds = np.asarray(seeds, dtype=np.uint64)
    if seeds.size and int(seeds.max()) >> G.s:
        raise SeedLengthMismatchError(f"Seeds do not fit in s={G.s} bits")
    return _expand_node(G, seeds, seeds & np.uint64(mask(G.block)), G.depth, 0, G.n_out)
