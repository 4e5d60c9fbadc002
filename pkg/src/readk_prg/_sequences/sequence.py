"""Read-k sequences and their occurrence views."""

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property


class WrongMultiplicityError(ValueError):
    """Raised when a variable does not appear exactly k times."""

    def __init__(self, variable: int, count: int, k: int) -> None:
        super().__init__(
            f"Variable {variable + 1} appears {count} time(s), expected exactly {k}"
        )
        self.variable = variable
        self.count = count
        self.k = k


class LengthMismatchError(ValueError):
    """Raised when a sequence length is not k times its variable count."""


class ReadIndexOutOfRangeError(IndexError):
    """Raised when a read index falls outside ``[0, k)``."""


@dataclass(frozen=True)
class ReadKSequence:
    """A sequence in which every variable of its support appears exactly ``k`` times.

    Variables keep their labels under restriction, so the support of a
    restricted sequence is an arbitrary set of non-negative integers. Use
    :func:`validate` to build one from raw indices over ``[0, n)``.

    Attributes:
        variables: Sorted support of the sequence.
        k: Read multiplicity.
        elems: The sequence itself, length ``k * len(variables)``.
    """

    variables: tuple[int, ...]
    k: int
    elems: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if len(self.elems) != self.k * len(self.variables):
            raise LengthMismatchError(
                f"Sequence length {len(self.elems)} != k*n = "
                f"{self.k}*{len(self.variables)}"
            )
        counts = Counter(self.elems)
        for v in self.variables:
            if counts.get(v, 0) != self.k:
                raise WrongMultiplicityError(v, counts.get(v, 0), self.k)
        if len(counts) != len(self.variables):
            stray = min(set(counts) - set(self.variables))
            raise WrongMultiplicityError(stray, counts[stray], self.k)

    @property
    def n(self) -> int:
        """Number of variables in the support."""
        return len(self.variables)

    @property
    def m(self) -> int:
        """Sequence length."""
        return len(self.elems)

    @cached_property
    def positions(self) -> Mapping[int, tuple[int, ...]]:
        """Positions of the occurrences of each variable, in order."""
        out: dict[int, list[int]] = {v: [] for v in self.variables}
        for pos, v in enumerate(self.elems):
            out[v].append(pos)
        return {v: tuple(p) for v, p in out.items()}

    @cached_property
    def read_of_position(self) -> tuple[int, ...]:
        """For every position, which read (0-based) of its variable it holds."""
        seen: Counter[int] = Counter()
        reads: list[int] = []
        for v in self.elems:
            reads.append(seen[v])
            seen[v] += 1
        return tuple(reads)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def one_based(self) -> tuple[int, ...]:
        """The sequence with 1-based variable labels, for display."""
        return tuple(v + 1 for v in self.elems)


@dataclass(frozen=True)
class OccurrenceView:
    """Variables ordered by the position of their ``read_index``-th occurrence."""

    read_index: int
    order: tuple[int, ...]


def validate(elems: Iterable[int], n: int, k: int) -> ReadKSequence:
    """Validate raw 0-based indices as a read-k sequence over ``[0, n)``.

    Raises:
        ValueError: If an index is outside ``[0, n)``.
        LengthMismatchError: If ``len(elems) != k * n``.
        WrongMultiplicityError: If some variable does not appear exactly ``k`` times.
    """
    items = tuple(elems)
    for v in items:
        if not 0 <= v < n:
            raise ValueError(f"Variable index {v + 1} outside [1, {n}]")
    return ReadKSequence(variables=tuple(range(n)), k=k, elems=items)


def canonical_relabel(s: ReadKSequence) -> tuple[ReadKSequence, dict[int, int]]:
    """Rename variables so the first-occurrence order is ``0, 1, ..., n-1``.

    Returns:
        The relabeled sequence and the applied map ``old label -> new label``.
    """
    mapping: dict[int, int] = {}
    for v in s.elems:
        if v not in mapping:
            mapping[v] = len(mapping)
    relabeled = ReadKSequence(
        variables=tuple(range(s.n)),
        k=s.k,
        elems=tuple(mapping[v] for v in s.elems),
    )
    return relabeled, mapping


def _check_read(s: ReadKSequence, i: int) -> None:
    if not 0 <= i < s.k:
        raise ReadIndexOutOfRangeError(f"Read index {i} outside [0, {s.k})")


def occurrence_view(s: ReadKSequence, i: int) -> OccurrenceView:
    """The permutation of the support ordered by ``i``-th occurrences (0-based ``i``)."""
    _check_read(s, i)
    reads = s.read_of_position
    return OccurrenceView(
        read_index=i,
        order=tuple(v for v, r in zip(s.elems, reads, strict=True) if r == i),
    )


def restrict(s: ReadKSequence, ys: Iterable[int]) -> ReadKSequence:
    """Keep only the occurrences of variables in ``ys``; labels are preserved."""
    keep = set(ys) & set(s.variables)
    return ReadKSequence(
        variables=tuple(sorted(keep)),
        k=s.k,
        elems=tuple(v for v in s.elems if v in keep),
    )


def pair_view(s: ReadKSequence, i: int, j: int) -> ReadKSequence:
    """The read-2 subsequence made of the ``i``-th and ``j``-th occurrences (``i < j``)."""
    _check_read(s, i)
    _check_read(s, j)
    if i >= j:
        raise ReadIndexOutOfRangeError(f"Pair view needs i < j, got ({i}, {j})")
    reads = s.read_of_position
    return ReadKSequence(
        variables=s.variables,
        k=2,
        elems=tuple(
            v for v, r in zip(s.elems, reads, strict=True) if r == i or r == j
        ),
    )


def is_k_pass(s: ReadKSequence) -> bool:
    """Whether the sequence is ``k`` consecutive passes, each a permutation of the support."""
    n = s.n
    reads = s.read_of_position
    return all(reads[pos] == pos // n for pos in range(s.m)) if n else True


def k_pass_sequence(perms: Sequence[Sequence[int]]) -> ReadKSequence:
    """Concatenate permutations of ``[0, n)`` into a ``len(perms)``-pass sequence."""
    if not perms:
        raise ValueError("At least one pass is required")
    n = len(perms[0])
    return validate([v for p in perms for v in p], n, len(perms))


def two_pass(perm: Sequence[int]) -> ReadKSequence:
    """The identity pass followed by ``perm``."""
    return k_pass_sequence([list(range(len(perm))), list(perm)])


def missing_reads(counts: Mapping[int, int], variables: Iterable[int], k: int) -> list[int]:
    """Occurrences to append so every variable is read exactly ``k`` times.

    Missing reads are appended in ascending variable order, all copies of a
    variable together. Program padding uses the same order so the padded
    program's read profile equals the padded sequence.
    """
    extra: list[int] = []
    for v in sorted(variables):
        c = counts.get(v, 0)
        if c > k:
            raise WrongMultiplicityError(v, c, k)
        extra.extend([v] * (k - c))
    return extra


def pad_sequence_to_exact_k(elems: Sequence[int], n: int, k: int) -> ReadKSequence:
    """Pad a sequence in which every variable appears at most ``k`` times."""
    extra = missing_reads(Counter(elems), range(n), k)
    return validate([*elems, *extra], n, k)


def enumerate_read_k_sequences(n: int, k: int):
    """Yield every read-k sequence over ``[0, n)`` exactly once, in lexicographic order.

    There are ``(kn)! / (k!)^n`` of them (90 for ``k=2, n=3``).
    """
    if n == 0:
        yield ReadKSequence(variables=(), k=k, elems=())
        return
    base = sorted(v for v in range(n) for _ in range(k))
    yield from (
        ReadKSequence(variables=tuple(range(n)), k=k, elems=p)
        for p in _multiset_permutations(base)
    )


def _multiset_permutations(items: list[int]):
    """Distinct permutations of a sorted multiset, lexicographically."""
    a = list(items)
    size = len(a)
    while True:
        yield tuple(a)
        i = size - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = size - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])
