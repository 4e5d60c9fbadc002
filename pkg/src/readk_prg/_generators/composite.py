"""Composite generators built from per-part recursive generators.

The read-k generator partitions the variables so that each part's
restriction is per-read-monotone and k-regularly-interleaving, then draws
each part from its own generator sized for ``2k`` visits and error
``eps / n``. The linear-length generator hands frequently read variables
raw seed bits and the rest to the read-k generator.
"""

import logging
import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np

from readk_prg._bits import BitArray, batchable, mask
from readk_prg._generators.inw import (
    DEFAULT_TOY_AUX,
    InvalidParamsError,
    InwDescriptor,
    Mode,
    build_inw,
    coerce_seed,
    expand_many as inw_expand_many,
)
from readk_prg._sequences import (
    ReadKSequence,
    canonical_relabel,
    head_visit_profile,
    pad_sequence_to_exact_k,
    partition_variables,
    restrict,
)

logger = logging.getLogger(__name__)


class CompositeKind(StrEnum):
    READ_K = "read_k"
    LINEAR_LENGTH = "linear_length"


@dataclass(frozen=True)
class PartGenerator:
    """One part of a composite: its output coordinates and seed segment.

    Attributes:
        variables: Output coordinates in generator output order.
        seed_offset: First seed bit of the segment.
        generator: The part's recursive generator.
    """

    variables: tuple[int, ...]
    seed_offset: int
    generator: InwDescriptor

    @property
    def seed_length(self) -> int:
        return self.generator.s


@dataclass(frozen=True)
class CompositeDescriptor:
    """A product of part generators plus raw bits for frequent variables.

    Attributes:
        kind: Which construction produced it.
        n: Output bits.
        k: Read bound used for the parts (the padded bound for linear length).
        w: Width parameter.
        eps: Total error budget.
        mode: Mixing primitive of every part.
        sequence: Source sequence, 0-based.
        parts: Part generators ordered by smallest variable.
        frequent: Frequent variables, ascending; they take the last seed bits.
        threshold: Frequency threshold ``k(n)`` for linear length.
        toy_aux: Key width of toy-mode parts.
    """

    kind: CompositeKind
    n: int
    k: int
    w: int
    eps: float
    mode: Mode
    sequence: tuple[int, ...]
    parts: tuple[PartGenerator, ...]
    frequent: tuple[int, ...] = ()
    threshold: int | None = None
    toy_aux: int = DEFAULT_TOY_AUX

    @property
    def frequent_offset(self) -> int:
        return sum(p.seed_length for p in self.parts)

    @property
    def s(self) -> int:
        return self.frequent_offset + len(self.frequent)

    @property
    def t(self) -> int:
        return len(self.parts)

    @property
    def output_length(self) -> int:
        return self.n

    def expand(self, seed: int | list[int] | tuple[int, ...]) -> int:
        return expand_composite(self, seed)

    def expand_many(self, seeds: np.ndarray) -> np.ndarray:
        return expand_composite_many(self, seeds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": "composite",
            "kind": self.kind.value,
            "n": self.n,
            "k": self.k,
            "w": self.w,
            "eps": self.eps,
            "mode": self.mode.value,
            "toy_aux": self.toy_aux,
            "threshold": self.threshold,
            "sequence": [v + 1 for v in self.sequence],
            "frequent": [v + 1 for v in self.frequent],
            "parts": [
                {
                    "variables": [v + 1 for v in p.variables],
                    "seed_offset": p.seed_offset,
                    "seed_length": p.seed_length,
                    "generator": p.generator.to_dict(),
                }
                for p in self.parts
            ],
            "s": self.s,
        }


@dataclass(frozen=True)
class SeedLengthReport:
    """Seed accounting of a composite generator.

    ``envelope`` is ``t * log2(n) * (log2(n / eps) + k * log2(w))``, the
    shape the read-k construction is expected to follow.
    """

    n: int
    k: int
    w: int
    eps: float
    t: int
    part_seed_lengths: tuple[int, ...]
    frequent_bits: int
    total: int
    envelope: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "w": self.w,
            "eps": self.eps,
            "t": self.t,
            "part_seed_lengths": list(self.part_seed_lengths),
            "frequent_bits": self.frequent_bits,
            "total": self.total,
            "envelope": self.envelope,
        }


def _check_params(w: int, eps: float) -> None:
    if w < 2:
        raise InvalidParamsError(f"Width must be at least 2, got {w}")
    if not 0 < eps < 1:
        raise InvalidParamsError(f"eps must lie in (0, 1), got {eps}")


def _read_k_parts(
    s: ReadKSequence, w: int, eps: float, mode: Mode, toy_aux: int
) -> tuple[PartGenerator, ...]:
    canon, mapping = canonical_relabel(s)
    original = {new: old for old, new in mapping.items()}
    partition = partition_variables(canon)

    pieces: list[tuple[tuple[int, ...], InwDescriptor]] = []
    for part in partition.parts:
        profile = head_visit_profile(restrict(canon, part))
        if profile.max_visits > 2 * s.k:
            raise AssertionError(
                f"Part of {len(part)} variables needs {profile.max_visits} "
                f"visits, more than 2k={2 * s.k}"
            )
        generator = build_inw(len(part), 2 * s.k, w, eps / s.n, mode, toy_aux)
        pieces.append((tuple(original[c] for c in part), generator))

    pieces.sort(key=lambda piece: min(piece[0]))
    parts: list[PartGenerator] = []
    offset = 0
    for variables, generator in pieces:
        parts.append(PartGenerator(variables, offset, generator))
        offset += generator.s
    return tuple(parts)


def build_read_k_generator(
    s: ReadKSequence,
    w: int,
    eps: float,
    mode: Mode | str = Mode.HASH,
    toy_aux: int = DEFAULT_TOY_AUX,
) -> CompositeDescriptor:
    """Stitch per-part generators over a structural partition of ``s``.

    The sequence is first relabeled so its first read is the identity; each
    part's generator emits its variables in that order, which is the tape
    order under which the part is walked with at most ``2k`` visits per cell
    (checked here before the part is built).

    Raises:
        InvalidParamsError: On ``w < 2``, ``eps`` outside ``(0, 1)`` or an
            empty sequence.
    """
    _check_params(w, eps)
    if s.n < 1:
        raise InvalidParamsError("The sequence must have at least one variable")
    mode = Mode(mode)
    parts = _read_k_parts(s, w, eps, mode, toy_aux)
    descriptor = CompositeDescriptor(
        kind=CompositeKind.READ_K,
        n=s.n,
        k=s.k,
        w=w,
        eps=eps,
        mode=mode,
        sequence=s.elems,
        parts=parts,
        toy_aux=toy_aux,
    )
    logger.info(
        "Read-%d generator over n=%d: t=%d parts, s=%d", s.k, s.n, descriptor.t, descriptor.s
    )
    return descriptor


def frequency_threshold(n: int) -> int:
    """``k(n) = max(1, floor(log2(log2 n) / 2))``.

    Raises:
        InvalidParamsError: If ``n < 4``.
    """
    if n < 4:
        raise InvalidParamsError(f"The frequency threshold needs n >= 4, got {n}")
    return max(1, math.floor(math.log2(math.log2(n)) / 2))


def build_linear_length_generator(
    elems: Sequence[int],
    n: int,
    w: int,
    eps: float,
    mode: Mode | str = Mode.HASH,
    toy_aux: int = DEFAULT_TOY_AUX,
    threshold: int | None = None,
) -> CompositeDescriptor:
    """Raw seed bits for frequent variables, the read-k generator for the rest.

    A variable is frequent when read more than ``k(n)`` times. The others are
    renamed densely, padded to exactly ``k'`` reads (``k'`` their largest
    read count) and passed to :func:`build_read_k_generator` with the full
    ``eps``; frequent variables contribute no error.

    Args:
        elems: The reading order, 0-based, over ``[0, n)``.
        n: Number of variables.
        w: Width parameter.
        eps: Error budget.
        mode: Mixing primitive of the read-k stage.
        toy_aux: Key width of toy-mode parts.
        threshold: Overrides ``k(n)``.

    Raises:
        InvalidParamsError: On bad parameters or ``n < 4`` without a threshold.
    """
    _check_params(w, eps)
    if any(not 0 <= v < n for v in elems):
        raise InvalidParamsError(f"Sequence indices must lie in [1, {n}]")
    mode = Mode(mode)
    k_n = threshold if threshold is not None else frequency_threshold(n)
    if k_n < 1:
        raise InvalidParamsError(f"Threshold must be at least 1, got {k_n}")

    counts = Counter(elems)
    frequent = tuple(v for v in range(n) if counts[v] > k_n)
    if len(frequent) * k_n > len(elems):
        raise AssertionError(
            f"{len(frequent)} frequent variables exceed length/k = {len(elems)}/{k_n}"
        )

    rest = [v for v in range(n) if counts[v] <= k_n]
    parts: tuple[PartGenerator, ...] = ()
    k_rest = 0
    if rest:
        dense = {v: j for j, v in enumerate(rest)}
        k_rest = max(1, max(counts[v] for v in rest))
        inner = pad_sequence_to_exact_k(
            [dense[v] for v in elems if v in dense], len(rest), k_rest
        )
        parts = tuple(
            PartGenerator(
                variables=tuple(rest[j] for j in p.variables),
                seed_offset=p.seed_offset,
                generator=p.generator,
            )
            for p in _read_k_parts(inner, w, eps, mode, toy_aux)
        )

    descriptor = CompositeDescriptor(
        kind=CompositeKind.LINEAR_LENGTH,
        n=n,
        k=k_rest,
        w=w,
        eps=eps,
        mode=mode,
        sequence=tuple(elems),
        parts=parts,
        frequent=frequent,
        threshold=k_n,
        toy_aux=toy_aux,
    )
    logger.info(
        "Linear-length generator over n=%d: |F|=%d (k(n)=%d), t=%d, s=%d",
        n,
        len(frequent),
        k_n,
        descriptor.t,
        descriptor.s,
    )
    return descriptor


def _place(G: CompositeDescriptor, seed: BitArray, part_outputs: list[BitArray]) -> BitArray:
    out = seed & 0
    for part, value in zip(G.parts, part_outputs, strict=True):
        for j, v in enumerate(part.variables):
            out = out | (((value >> j) & 1) << v)
    for j, v in enumerate(G.frequent):
        out = out | (((seed >> (G.frequent_offset + j)) & 1) << v)
    return out


def expand_composite(G: CompositeDescriptor, seed: int | list[int] | tuple[int, ...]) -> int:
    """Expand each segment with its part generator and place the bits.

    Raises:
        SeedLengthMismatchError: If the seed does not have ``s`` bits.
    """
    value = coerce_seed(seed, G.s)
    outputs = [
        p.generator.expand((value >> p.seed_offset) & mask(p.seed_length))
        for p in G.parts
    ]
    return _place(G, value, outputs)


def expand_composite_many(G: CompositeDescriptor, seeds: np.ndarray) -> np.ndarray:
    """Batched :func:`expand_composite`; object arrays beyond 63 bits."""
    if not batchable(G.s, G.n):
        return np.array([expand_composite(G, int(v)) for v in seeds], dtype=object)
    seeds = np.asarray(seeds, dtype=np.uint64)
    outputs = [
        inw_expand_many(
            p.generator, (seeds >> np.uint64(p.seed_offset)) & np.uint64(mask(p.seed_length))
        )
        for p in G.parts
    ]
    return _place(G, seeds, outputs)


def seed_report(G: CompositeDescriptor) -> SeedLengthReport:
    """Exact seed accounting plus the reference envelope."""
    log_n = math.log2(G.n) if G.n > 1 else 0.0
    envelope = G.t * log_n * (math.log2(G.n / G.eps) + G.k * math.log2(G.w))
    return SeedLengthReport(
        n=G.n,
        k=G.k,
        w=G.w,
        eps=G.eps,
        t=G.t,
        part_seed_lengths=tuple(p.seed_length for p in G.parts),
        frequent_bits=len(G.frequent),
        total=G.s,
        envelope=envelope,
    )
