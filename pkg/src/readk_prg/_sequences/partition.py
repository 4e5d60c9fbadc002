"""Variable partition into parts that pass both structural checkers."""

import logging
import math
from dataclasses import dataclass, replace

from readk_prg._sequences.checkers import (
    Direction,
    InterleavingCertificate,
    is_k_regularly_interleaving,
    is_per_read_monotone,
)
from readk_prg._sequences.monotone import extract_monotone_subset
from readk_prg._sequences.sequence import (
    ReadKSequence,
    canonical_relabel,
    is_k_pass,
    pair_view,
    restrict,
)

logger = logging.getLogger(__name__)


class InvalidPartitionError(AssertionError):
    """Raised when a computed or supplied partition fails re-verification."""


@dataclass(frozen=True)
class PartCertificate:
    """Checker outputs for one part's restriction.

    Directions are taken in first-read order. Block variables use the
    original labels.
    """

    variables: tuple[int, ...]
    directions: tuple[Direction, ...]
    interleaving: dict[tuple[int, int], InterleavingCertificate]


@dataclass(frozen=True)
class VariablePartition:
    """Disjoint cover of a sequence's support.

    Attributes:
        parts: Sorted variable tuples, ordered by smallest variable.
        certificates: One certificate per part, same order.
        k_pass: Whether the k-pass extraction path produced the partition.
    """

    parts: tuple[tuple[int, ...], ...]
    certificates: tuple[PartCertificate, ...]
    k_pass: bool

    @property
    def t(self) -> int:
        return len(self.parts)


def partition_size_bound(n: int, k: int) -> float:
    """The reference part-count envelope ``exp(k^2) * n^(1 - 1/2^(k-1))``."""
    if n <= 0:
        return 0.0
    return math.exp(k * k) * n ** (1.0 - 1.0 / 2 ** (k - 1))


def _certify(
    canon: ReadKSequence, original: dict[int, int], part: tuple[int, ...]
) -> PartCertificate:
    r = restrict(canon, part)
    labels = tuple(sorted(original[v] for v in part))
    monotone = is_per_read_monotone(r)
    if not monotone.accepted:
        raise InvalidPartitionError(
            f"Part {[v + 1 for v in labels]} is not per-read-monotone: {monotone.witness}"
        )
    interleaving = is_k_regularly_interleaving(r)
    if not interleaving.accepted:
        raise InvalidPartitionError(
            f"Part {[v + 1 for v in labels]} fails interleaving on reads "
            f"{interleaving.failed_pair}: {interleaving.witness}"
        )
    return PartCertificate(
        variables=labels,
        directions=monotone.directions,
        interleaving={
            pair: replace(
                cert, blocks=tuple(frozenset(original[v] for v in b) for b in cert.blocks)
            )
            for pair, cert in interleaving.certificates.items()
        },
    )


def certify_part(s: ReadKSequence, part: tuple[int, ...]) -> PartCertificate:
    """Run both checkers on the part's restriction, in first-read order.

    Monotonicity is judged after :func:`canonical_relabel`, so a part is
    monotone when each read visits it in increasing or decreasing order of
    first-read position.

    Raises:
        InvalidPartitionError: If either checker rejects.
    """
    canon, mapping = canonical_relabel(s)
    original = {new: old for old, new in mapping.items()}
    return _certify(canon, original, tuple(sorted(mapping[v] for v in part)))


def verify_partition(s: ReadKSequence, parts: tuple[tuple[int, ...], ...]) -> None:
    """Re-check disjointness, coverage and both checkers on every part.

    Raises:
        InvalidPartitionError: On the first failed condition.
    """
    seen: set[int] = set()
    for part in parts:
        if not part:
            raise InvalidPartitionError("Empty part")
        overlap = seen & set(part)
        if overlap:
            raise InvalidPartitionError(
                f"Variables {sorted(v + 1 for v in overlap)} appear in two parts"
            )
        seen |= set(part)
    if seen != set(s.variables):
        missing = sorted(v + 1 for v in set(s.variables) - seen)
        raise InvalidPartitionError(f"Variables {missing} are not covered")
    canon, mapping = canonical_relabel(s)
    original = {new: old for old, new in mapping.items()}
    for part in parts:
        _certify(canon, original, tuple(sorted(mapping[v] for v in part)))


def _split_until_interleaving(s: ReadKSequence, ys: tuple[int, ...]) -> list[tuple[int, ...]]:
    r = restrict(s, ys)
    result = is_k_regularly_interleaving(r)
    if result.accepted:
        return [ys]
    assert result.failed_pair is not None and result.witness is not None
    i, j = result.failed_pair
    view = pair_view(r, i, j)
    cut = result.witness.position
    head = {v for v, rd in zip(view.elems[:cut], view.read_of_position[:cut], strict=True) if rd == 0}
    left = tuple(v for v in ys if v in head)
    right = tuple(v for v in ys if v not in head)
    if not left or not right:
        logger.debug("Degenerate split of %d variables, using singletons", len(ys))
        return [(v,) for v in ys]
    return _split_until_interleaving(s, left) + _split_until_interleaving(s, right)


def partition_variables(s: ReadKSequence) -> VariablePartition:
    """Partition the support so every part passes both structural checkers.

    The sequence is first relabeled canonically, so the first read visits
    every part in increasing order whatever the input labels are. A k-pass
    sequence is then peeled by repeated monotone extraction, and each part
    inherits the pass structure. Any other sequence is peeled the same way,
    then each extracted set is split at the first interleaving failure
    (variables opened before the failure position against the rest) until
    every piece passes; singletons always pass. All parts are re-certified
    and mapped back to the original labels before returning.

    Raises:
        InvalidPartitionError: If a produced part fails certification.
    """
    canon, mapping = canonical_relabel(s)
    original = {new: old for old, new in mapping.items()}
    k_pass = is_k_pass(canon)
    remaining = set(canon.variables)
    parts: list[tuple[int, ...]] = []
    while remaining:
        ys = extract_monotone_subset(restrict(canon, remaining))
        if k_pass:
            parts.append(ys)
        else:
            parts.extend(_split_until_interleaving(canon, ys))
        remaining -= set(ys)

    certificates = sorted(
        (_certify(canon, original, part) for part in parts), key=lambda c: c.variables[0]
    )
    logger.debug(
        "Partitioned n=%d k=%d into t=%d parts (k-pass=%s)",
        s.n,
        s.k,
        len(certificates),
        k_pass,
    )
    return VariablePartition(
        parts=tuple(c.variables for c in certificates),
        certificates=tuple(certificates),
        k_pass=k_pass,
    )
