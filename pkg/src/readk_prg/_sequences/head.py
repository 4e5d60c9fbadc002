"""Head-walk visit counting over a fixed tape order."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from readk_prg._sequences.sequence import ReadKSequence


class TapeMismatchError(ValueError):
    """Raised when a tape order is not a permutation of the sequence support."""


@dataclass(frozen=True)
class HeadWalkProfile:
    """Visit counts of a head that reads the sequence on a fixed tape.

    Attributes:
        tape_order: Variable stored in each cell, left to right.
        stops: Reads performed at each cell.
        visits: Stops plus strict pass-throughs for each cell.
        max_visits: Largest entry of ``visits`` (0 on an empty tape).
    """

    tape_order: tuple[int, ...]
    stops: tuple[int, ...]
    visits: tuple[int, ...]
    max_visits: int


def head_visit_profile(
    s: ReadKSequence, tape_order: Sequence[int] | None = None
) -> HeadWalkProfile:
    """Walk a head over ``tape_order`` reading ``s`` position by position.

    A cell is visited once for every read performed there and once for every
    move between consecutive reads that passes strictly over it.

    Args:
        s: Sequence to execute.
        tape_order: Permutation of the support; defaults to the sorted support.

    Raises:
        TapeMismatchError: If ``tape_order`` does not list the support exactly once.
    """
    tape = tuple(s.variables if tape_order is None else tape_order)
    if len(set(tape)) != len(tape) or set(tape) != set(s.variables):
        raise TapeMismatchError(
            f"Tape order of {len(tape)} cells does not match the support of "
            f"{s.n} variables"
        )
    cells = len(tape)
    if cells == 0:
        return HeadWalkProfile(tape_order=(), stops=(), visits=(), max_visits=0)

    cell_of = {v: c for c, v in enumerate(tape)}
    path = np.fromiter((cell_of[v] for v in s.elems), dtype=np.int64, count=s.m)
    stops = np.bincount(path, minlength=cells)

    lo = np.minimum(path[:-1], path[1:])
    hi = np.maximum(path[:-1], path[1:])
    jumps = hi - lo >= 2
    # +1 on (lo, hi) exclusive, via a difference array
    diff = np.zeros(cells + 1, dtype=np.int64)
    np.add.at(diff, lo[jumps] + 1, 1)
    np.add.at(diff, hi[jumps], -1)
    visits = stops + np.cumsum(diff)[:cells]

    return HeadWalkProfile(
        tape_order=tape,
        stops=tuple(int(c) for c in stops),
        visits=tuple(int(c) for c in visits),
        max_visits=int(visits.max()),
    )
