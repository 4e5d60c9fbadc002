"""Longest monotone subsequences and Erdős–Szekeres extraction."""

from bisect import bisect_left
from collections.abc import Sequence

from readk_prg._sequences.checkers import Direction
from readk_prg._sequences.sequence import ReadKSequence, occurrence_view


def longest_monotone_subsequence(
    perm: Sequence[int], direction: Direction = Direction.INCREASING
) -> tuple[int, ...]:
    """Indices of a longest strictly monotone subsequence, by patience sorting.

    Runs in ``O(m log m)``. A backward patience pass gives, for every
    position, the length of the longest chain starting there; a forward scan
    then takes the first position that can still complete a longest chain.
    Among all longest chains the result is the lexicographically smallest
    index tuple, so ``(2, 4, 1, 3)`` gives ``(0, 1)``.

    Args:
        perm: Distinct values.
        direction: Which monotone direction to look for.

    Returns:
        Increasing positions into ``perm``.
    """
    sign = 1 if direction is Direction.INCREASING else -1
    tops: list[int] = []  # keys of pile tops, increasing
    starting = [0] * len(perm)
    for i in range(len(perm) - 1, -1, -1):
        key = -sign * perm[i]
        pile = bisect_left(tops, key)
        if pile == len(tops):
            tops.append(key)
        else:
            tops[pile] = key
        starting[i] = pile + 1

    need = len(tops)
    chain: list[int] = []
    for i, value in enumerate(perm):
        if need == 0:
            break
        if starting[i] == need and (not chain or sign * value > sign * perm[chain[-1]]):
            chain.append(i)
            need -= 1
    return tuple(chain)


def best_monotone_subsequence(
    perm: Sequence[int],
) -> tuple[tuple[int, ...], Direction]:
    """The longer of the increasing and decreasing answers; ties go to increasing."""
    inc = longest_monotone_subsequence(perm, Direction.INCREASING)
    dec = longest_monotone_subsequence(perm, Direction.DECREASING)
    if len(dec) > len(inc):
        return dec, Direction.DECREASING
    return inc, Direction.INCREASING


def extract_monotone_subset(s: ReadKSequence) -> tuple[int, ...]:
    """Variables whose restriction of ``s`` is per-read-monotone in first-read order.

    Variables are ranked by their first-read position, which is their label
    after :func:`canonical_relabel`. Starting from the whole support, read by
    read, a longest monotone subsequence of the surviving ranks is kept. The
    first read keeps everything, so the result has at least
    ``ceil(n ** (1 / 2 ** (k - 1)))`` variables whatever the labels are.

    Returns:
        The kept variables in their original labels, sorted.
    """
    if s.n == 0:
        return ()
    rank = {v: r for r, v in enumerate(occurrence_view(s, 0).order)}
    candidates = set(s.variables)
    for i in range(s.k):
        order = [v for v in occurrence_view(s, i).order if v in candidates]
        kept, _ = best_monotone_subsequence([rank[v] for v in order])
        candidates = {order[j] for j in kept}
    return tuple(sorted(candidates))
