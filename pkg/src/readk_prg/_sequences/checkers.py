"""Structural checkers for read-k sequences.

Rejections are return values carrying a witness, not exceptions, so callers
(the partition search and the structural suite) can act on the failure
position.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import combinations

from readk_prg._sequences.sequence import (
    ReadKSequence,
    occurrence_view,
    pair_view,
)


class Direction(StrEnum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


class NotPerReadMonotoneError(ValueError):
    """Raised when a decomposition is requested for a non per-read-monotone sequence."""


class AmbiguousDecompositionError(ValueError):
    """Raised when reads cannot be assigned to consecutive segments."""


@dataclass(frozen=True)
class MonotoneViolation:
    """The first read whose occurrence view changes direction.

    ``before`` is the pair that fixed the direction and ``after`` the pair
    that broke it, both as variable labels.
    """

    read_index: int
    before: tuple[int, int]
    after: tuple[int, int]


@dataclass(frozen=True)
class MonotonicityResult:
    accepted: bool
    directions: tuple[Direction, ...] = ()
    witness: MonotoneViolation | None = None

    def __bool__(self) -> bool:
        return self.accepted


@dataclass(frozen=True)
class InterleavingCertificate:
    """Forced block decomposition of a read-2 sequence.

    Attributes:
        blocks: Variable sets of the blocks, in sequence order.
        boundaries: Exclusive end position of each block.
    """

    blocks: tuple[frozenset[int], ...]
    boundaries: tuple[int, ...]


@dataclass(frozen=True)
class InterleavingViolation:
    """Where the greedy block scan had to close an incomplete block."""

    position: int
    firsts: frozenset[int]
    seconds: frozenset[int]


@dataclass(frozen=True)
class InterleavingResult:
    accepted: bool
    certificate: InterleavingCertificate | None = None
    witness: InterleavingViolation | None = None

    def __bool__(self) -> bool:
        return self.accepted


@dataclass(frozen=True)
class KInterleavingResult:
    """Outcome of checking every pair of reads.

    Attributes:
        accepted: Whether every pair view is 2-regularly-interleaving.
        certificates: Certificate per 0-based read pair ``(i, j)``, ``i < j``.
        failed_pair: The first rejected pair, if any.
        witness: The rejection witness of ``failed_pair``.
    """

    accepted: bool
    certificates: dict[tuple[int, int], InterleavingCertificate] = field(
        default_factory=dict
    )
    failed_pair: tuple[int, int] | None = None
    witness: InterleavingViolation | None = None

    def __bool__(self) -> bool:
        return self.accepted


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    direction: Direction


@dataclass(frozen=True)
class MonotoneDecomposition:
    """Split of a per-read-monotone sequence into alternating segments.

    Attributes:
        segments: Consecutive ``[start, end)`` ranges covering the sequence.
        read_boundaries: First (0-based) read assigned to each segment.
    """

    segments: tuple[Segment, ...]
    read_boundaries: tuple[int, ...]

    def pieces(self, s: ReadKSequence) -> list[tuple[int, ...]]:
        """The subsequences ``T_1 ... T_t`` of ``s``."""
        return [s.elems[seg.start : seg.end] for seg in self.segments]


@dataclass(frozen=True)
class JumpViolation:
    position: int
    current: int
    following: int


PairChecker = Callable[[ReadKSequence], InterleavingResult]


def _view_direction(order: tuple[int, ...], i: int) -> Direction | MonotoneViolation:
    if len(order) < 2:
        return Direction.INCREASING
    first = (order[0], order[1])
    direction = Direction.INCREASING if order[1] > order[0] else Direction.DECREASING
    for a, b in zip(order[1:], order[2:], strict=False):
        if (b > a) != (direction is Direction.INCREASING):
            return MonotoneViolation(read_index=i, before=first, after=(a, b))
    return direction


def is_per_read_monotone(s: ReadKSequence) -> MonotonicityResult:
    """Check that every occurrence view is increasing or decreasing in label order.

    Views of length one (and the empty sequence) count as increasing.
    """
    directions: list[Direction] = []
    for i in range(s.k):
        outcome = _view_direction(occurrence_view(s, i).order, i)
        if isinstance(outcome, MonotoneViolation):
            return MonotonicityResult(accepted=False, witness=outcome)
        directions.append(outcome)
    return MonotonicityResult(accepted=True, directions=tuple(directions))


def is_2_regularly_interleaving(s2: ReadKSequence) -> InterleavingResult:
    """Greedy forced-block check of a read-2 sequence.

    Within a block, first occurrences accumulate until a second occurrence
    appears; from then on only second occurrences may follow. A first
    occurrence after that closes the block, which is accepted only when
    every variable opened in the block has also been closed. Block
    boundaries are forced, so the scan decides existence and the returned
    certificate is the unique decomposition.

    Raises:
        ValueError: If ``s2`` is not a read-2 sequence.
    """
    if s2.k != 2:
        raise ValueError(f"Expected a read-2 sequence, got k={s2.k}")
    reads = s2.read_of_position
    blocks: list[frozenset[int]] = []
    boundaries: list[int] = []
    firsts: set[int] = set()
    seconds: set[int] = set()
    closing = False
    for pos, (v, r) in enumerate(zip(s2.elems, reads, strict=True)):
        if r == 0:
            if closing:
                if seconds != firsts:
                    return InterleavingResult(
                        accepted=False,
                        witness=InterleavingViolation(
                            position=pos,
                            firsts=frozenset(firsts),
                            seconds=frozenset(seconds),
                        ),
                    )
                blocks.append(frozenset(firsts))
                boundaries.append(pos)
                firsts, seconds, closing = set(), set(), False
            firsts.add(v)
        else:
            closing = True
            seconds.add(v)
    if firsts:
        if seconds != firsts:
            return InterleavingResult(
                accepted=False,
                witness=InterleavingViolation(
                    position=s2.m,
                    firsts=frozenset(firsts),
                    seconds=frozenset(seconds),
                ),
            )
        blocks.append(frozenset(firsts))
        boundaries.append(s2.m)
    return InterleavingResult(
        accepted=True,
        certificate=InterleavingCertificate(
            blocks=tuple(blocks), boundaries=tuple(boundaries)
        ),
    )


def _cut_sets(m: int) -> Iterator[tuple[int, ...]]:
    for mask in range(1 << max(m - 1, 0)):
        yield tuple(p + 1 for p in range(m - 1) if mask >> p & 1)


def exhaustive_interleaving_blocks(s2: ReadKSequence) -> list[InterleavingCertificate]:
    """Every valid block decomposition of a read-2 sequence, by brute force.

    Tries all ``2^(m-1)`` sets of cut points. Used only to cross-validate the
    greedy checker at small sizes.
    """
    if s2.k != 2:
        raise ValueError(f"Expected a read-2 sequence, got k={s2.k}")
    if s2.m == 0:
        return [InterleavingCertificate(blocks=(), boundaries=())]
    reads = s2.read_of_position
    found: list[InterleavingCertificate] = []
    for cuts in _cut_sets(s2.m):
        ends = (*cuts, s2.m)
        start = 0
        blocks: list[frozenset[int]] = []
        for end in ends:
            block_reads = reads[start:end]
            block_vars = s2.elems[start:end]
            opened = {v for v, r in zip(block_vars, block_reads, strict=True) if r == 0}
            closed = {v for v, r in zip(block_vars, block_reads, strict=True) if r == 1}
            last_first = max(
                (p for p, r in enumerate(block_reads) if r == 0), default=-1
            )
            first_second = min(
                (p for p, r in enumerate(block_reads) if r == 1),
                default=len(block_reads),
            )
            if opened != closed or last_first > first_second:
                break
            blocks.append(frozenset(opened))
            start = end
        else:
            found.append(
                InterleavingCertificate(blocks=tuple(blocks), boundaries=ends)
            )
    return found


def is_k_regularly_interleaving(
    s: ReadKSequence, pair_checker: PairChecker | None = None
) -> KInterleavingResult:
    """Check every pair view ``S^(i,j)``, ``i < j``.

    Args:
        s: Sequence to check.
        pair_checker: Read-2 checker to apply; defaults to
            :func:`is_2_regularly_interleaving`.

    Returns:
        Certificates for all pairs, or the first failing pair with its witness.
        Sequences with ``k = 1`` are accepted with no certificates.
    """
    check = pair_checker or is_2_regularly_interleaving
    certificates: dict[tuple[int, int], InterleavingCertificate] = {}
    for i, j in combinations(range(s.k), 2):
        result = check(pair_view(s, i, j))
        if not result.accepted:
            return KInterleavingResult(
                accepted=False,
                certificates=certificates,
                failed_pair=(i, j),
                witness=result.witness,
            )
        assert result.certificate is not None
        certificates[(i, j)] = result.certificate
    return KInterleavingResult(accepted=True, certificates=certificates)


def monotone_decomposition(s: ReadKSequence) -> MonotoneDecomposition:
    """Group consecutive reads of equal direction into consecutive segments.

    Each read is assigned to the unique segment containing all of its
    occurrences.

    Raises:
        NotPerReadMonotoneError: If some occurrence view is not monotone.
        AmbiguousDecompositionError: If two groups of reads overlap in position.
    """
    result = is_per_read_monotone(s)
    if not result.accepted:
        witness = result.witness
        assert witness is not None
        raise NotPerReadMonotoneError(
            f"Read {witness.read_index + 1} is not monotone: "
            f"{witness.before[0] + 1},{witness.before[1] + 1} then "
            f"{witness.after[0] + 1},{witness.after[1] + 1}"
        )
    if s.m == 0:
        return MonotoneDecomposition(
            segments=(Segment(0, 0, Direction.INCREASING),), read_boundaries=(0,)
        )

    lo = [s.m] * s.k
    hi = [-1] * s.k
    for pos, r in enumerate(s.read_of_position):
        lo[r] = min(lo[r], pos)
        hi[r] = max(hi[r], pos)

    groups: list[tuple[int, int, int, Direction]] = []  # first read, lo, hi, dir
    for i, direction in enumerate(result.directions):
        if groups and groups[-1][3] is direction:
            first, g_lo, g_hi, _ = groups[-1]
            groups[-1] = (first, min(g_lo, lo[i]), max(g_hi, hi[i]), direction)
        else:
            groups.append((i, lo[i], hi[i], direction))

    for left, right in zip(groups, groups[1:], strict=False):
        if left[2] >= right[1]:
            raise AmbiguousDecompositionError(
                f"Reads from {left[0] + 1} and from {right[0] + 1} overlap "
                f"at positions {right[1] + 1}..{left[2] + 1}"
            )

    segments = tuple(
        Segment(start=g_lo, end=g_hi + 1, direction=direction)
        for _, g_lo, g_hi, direction in groups
    )
    return MonotoneDecomposition(
        segments=segments, read_boundaries=tuple(g[0] for g in groups)
    )


def has_no_upward_jumps(
    s: ReadKSequence, direction: Direction = Direction.INCREASING
) -> JumpViolation | None:
    """Find a step from ``x_i`` directly to ``x_j`` with ``j > i + 1``.

    Ranks are taken in the sorted support, so restricted sequences are
    judged by their own variable order. With ``Direction.DECREASING`` the
    mirrored property is checked (no step down by more than one rank).

    Returns:
        The first violation, or ``None`` when the property holds.
    """
    rank = {v: r for r, v in enumerate(s.variables)}
    sign = 1 if direction is Direction.INCREASING else -1
    for pos in range(s.m - 1):
        a, b = rank[s.elems[pos]], rank[s.elems[pos + 1]]
        if sign * (b - a) > 1:
            return JumpViolation(
                position=pos, current=s.elems[pos], following=s.elems[pos + 1]
            )
    return None
