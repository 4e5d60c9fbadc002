"""Exhaustive and sampled structural suites over small sequence spaces.

Every read-k sequence over ``[0, n)`` is enumerated for ``n <= n_max``.
The checkers classify each one; the suite then asserts the properties the
generator constructions rely on and cross-validates the greedy interleaving
checker against brute-force block search. A failure keeps the first
counterexample, shrunk by deleting variables while the failure persists.
"""

import logging
import math
from collections.abc import Callable, Iterable
from typing import Any

import numpy as np

from readk_prg._harness.reports import Counterexample, SuiteResult
from readk_prg._sequences import (
    Direction,
    InvalidPartitionError,
    PairChecker,
    ReadKSequence,
    canonical_relabel,
    enumerate_read_k_sequences,
    exhaustive_interleaving_blocks,
    has_no_upward_jumps,
    head_visit_profile,
    is_2_regularly_interleaving,
    is_k_regularly_interleaving,
    is_per_read_monotone,
    occurrence_view,
    pair_view,
    partition_variables,
    restrict,
    validate,
    verify_partition,
)

logger = logging.getLogger(__name__)

Failure = Callable[[ReadKSequence], bool]


def sequence_count(n: int, k: int) -> int:
    """Number of read-k sequences over ``n`` variables: ``(kn)! / (k!)^n``."""
    return math.factorial(k * n) // math.factorial(k) ** n


def dense_relabel(s: ReadKSequence) -> ReadKSequence:
    """Order-preserving relabel of the support onto ``[0, n)``."""
    rank = {v: r for r, v in enumerate(s.variables)}
    return validate((rank[v] for v in s.elems), s.n, s.k)


def shrink(s: ReadKSequence, fails: Failure) -> ReadKSequence:
    """Delete variables one at a time while ``fails`` still holds."""
    current = s
    changed = True
    while changed and current.n > 1:
        changed = False
        for v in current.variables:
            candidate = dense_relabel(restrict(current, set(current.variables) - {v}))
            try:
                still = fails(candidate)
            except Exception:
                still = False
            if still:
                current = candidate
                changed = True
                break
    return dense_relabel(current)


def _counterexample(
    name: str, s: ReadKSequence, fails: Failure, **extra: Any
) -> Counterexample:
    small = shrink(s, fails)
    return Counterexample(
        property=name,
        data={
            "n": small.n,
            "k": small.k,
            "sequence": list(small.one_based()),
            "original": list(s.one_based()),
            **extra,
        },
    )


def _passes_both(s: ReadKSequence, pair_checker: PairChecker) -> bool:
    return (
        is_per_read_monotone(s).accepted
        and is_k_regularly_interleaving(s, pair_checker).accepted
    )


def _greedy_agrees(s: ReadKSequence, pair_checker: PairChecker) -> bool:
    for i in range(s.k):
        for j in range(i + 1, s.k):
            view = pair_view(s, i, j)
            greedy = pair_checker(view)
            found = exhaustive_interleaving_blocks(view)
            if greedy.accepted != bool(found):
                return False
            if greedy.accepted and (len(found) != 1 or greedy.certificate != found[0]):
                return False
    return True


def _views_are_permutations(s: ReadKSequence) -> bool:
    support = sorted(s.variables)
    return all(sorted(occurrence_view(s, i).order) == support for i in range(s.k))


def _canonical_is_fixed(s: ReadKSequence) -> bool:
    once, _ = canonical_relabel(s)
    twice, mapping = canonical_relabel(once)
    return twice == once and all(old == new for old, new in mapping.items())


def _jump_direction(s: ReadKSequence) -> Direction | None:
    """The common direction of every read, if there is one."""
    result = is_per_read_monotone(s)
    if not result.accepted or not result.directions:
        return None
    first = result.directions[0]
    return first if all(d is first for d in result.directions) else None


def _partition_is_sound(s: ReadKSequence) -> bool:
    try:
        verify_partition(s, partition_variables(s).parts)
    except InvalidPartitionError:
        return False
    return True


def check_sequence(
    s: ReadKSequence, result: SuiteResult, pair_checker: PairChecker
) -> None:
    """Record every structural property of one sequence into ``result``."""
    result.outcome("views_are_permutations").record(
        _views_are_permutations(s),
        Counterexample(
            "views_are_permutations", {"n": s.n, "k": s.k, "sequence": list(s.one_based())}
        ),
    )
    result.outcome("canonical_relabel_idempotent").record(
        _canonical_is_fixed(s),
        Counterexample(
            "canonical_relabel_idempotent",
            {"n": s.n, "k": s.k, "sequence": list(s.one_based())},
        ),
    )

    agrees = _greedy_agrees(s, pair_checker)
    outcome = result.outcome("greedy_matches_exhaustive")
    outcome.record(
        agrees,
        None
        if agrees or outcome.counterexample is not None
        else _counterexample(
            "greedy_matches_exhaustive",
            s,
            lambda t: not _greedy_agrees(t, pair_checker),
        ),
    )

    sound = _partition_is_sound(s)
    outcome = result.outcome("partition_sound")
    outcome.record(
        sound,
        None
        if sound or outcome.counterexample is not None
        else _counterexample("partition_sound", s, lambda t: not _partition_is_sound(t)),
    )

    if not _passes_both(s, pair_checker):
        return
    result.instances["accepted"] = result.instances.get("accepted", 0) + 1

    bound = 2 * s.k
    profile = head_visit_profile(s)

    def over_bound(t: ReadKSequence) -> bool:
        return _passes_both(t, pair_checker) and head_visit_profile(t).max_visits > bound

    ok = profile.max_visits <= bound
    outcome = result.outcome("visits_within_2k")
    outcome.record(
        ok,
        None
        if ok or outcome.counterexample is not None
        else _counterexample(
            "visits_within_2k", s, over_bound, max_visits=profile.max_visits, bound=bound
        ),
    )

    direction = _jump_direction(s)
    if direction is None:
        return

    def jumps(t: ReadKSequence) -> bool:
        d = _jump_direction(t)
        return (
            d is not None
            and _passes_both(t, pair_checker)
            and has_no_upward_jumps(t, d) is not None
        )

    violation = has_no_upward_jumps(s, direction)
    outcome = result.outcome("no_upward_jumps")
    outcome.record(
        violation is None,
        None
        if violation is None or outcome.counterexample is not None
        else _counterexample(
            "no_upward_jumps",
            s,
            jumps,
            direction=str(direction),
            position=violation.position + 1,
        ),
    )


def structural_suite(
    n_max: int,
    k: int,
    *,
    pair_checker: PairChecker = is_2_regularly_interleaving,
    planted: Iterable[ReadKSequence] = (),
) -> SuiteResult:
    """Enumerate all read-k sequences over ``[0, n)`` for ``1 <= n <= n_max``.

    Args:
        n_max: Largest support size to enumerate.
        k: Read multiplicity.
        pair_checker: Read-2 interleaving checker under test.
        planted: Sequences asserted to pass both checkers. Each is also
            run through every property; a planted sequence that fails a
            checker fails the suite with itself as the counterexample.
    """
    result = SuiteResult(name="structural")
    result.instances["accepted"] = 0
    for n in range(1, n_max + 1):
        expected = sequence_count(n, k)
        seen = 0
        for s in enumerate_read_k_sequences(n, k):
            seen += 1
            check_sequence(s, result, pair_checker)
        result.instances[f"sequences_n{n}"] = seen
        result.outcome("enumeration_count").record(
            seen == expected,
            Counterexample(
                "enumeration_count", {"n": n, "k": k, "expected": expected, "enumerated": seen}
            ),
        )
        logger.info("n=%d k=%d: %d sequences checked", n, k, seen)
    planted = list(planted)
    for s in planted:
        check_sequence(s, result, pair_checker)
        accepted = _passes_both(s, pair_checker)
        outcome = result.outcome("planted_accepted")
        outcome.record(
            accepted,
            None
            if accepted or outcome.counterexample is not None
            else _counterexample(
                "planted_accepted", s, lambda t: not _passes_both(t, pair_checker)
            ),
        )
    if planted:
        result.instances["planted"] = len(planted)
    return result


def random_read_k_sequence(n: int, k: int, rng: np.random.Generator) -> ReadKSequence:
    """A uniformly random arrangement of the multiset with ``k`` copies of each variable."""
    elems = np.repeat(np.arange(n), k)
    rng.shuffle(elems)
    return validate((int(v) for v in elems), n, k)


def random_two_pass_like(n: int, k: int, rng: np.random.Generator) -> ReadKSequence:
    """``k`` passes, each a random permutation; the first pass is the identity."""
    passes = [list(range(n))] + [[int(v) for v in rng.permutation(n)] for _ in range(k - 1)]
    return validate((v for p in passes for v in p), n, k)


def partition_battery(
    count: int,
    ns: Iterable[int],
    ks: Iterable[int],
    rng_seed: int = 0,
) -> SuiteResult:
    """Partition soundness on random sequences.

    Each instance draws from ``default_rng([rng_seed, n, k, i])``; even
    instances are random arrangements and odd ones random k-pass
    sequences. Every part of every partition is re-certified and, once
    canonically relabeled, must meet the ``2k`` visit bound.
    """
    result = SuiteResult(name="partition_battery")
    for n in ns:
        for k in ks:
            for i in range(count):
                rng = np.random.default_rng([rng_seed, n, k, i])
                s = (
                    random_read_k_sequence(n, k, rng)
                    if i % 2 == 0
                    else random_two_pass_like(n, k, rng)
                )
                sound = _partition_is_sound(s)
                outcome = result.outcome("partition_sound")
                outcome.record(
                    sound,
                    None
                    if sound or outcome.counterexample is not None
                    else _counterexample(
                        "partition_sound", s, lambda t: not _partition_is_sound(t)
                    ),
                )
                if not sound:
                    continue
                partition = partition_variables(s)
                worst = max(
                    head_visit_profile(canonical_relabel(restrict(s, part))[0]).max_visits
                    for part in partition.parts
                )
                result.outcome("part_visits_within_2k").record(
                    worst <= 2 * k,
                    Counterexample(
                        "part_visits_within_2k",
                        {
                            "n": n,
                            "k": k,
                            "instance": i,
                            "max_visits": worst,
                            "sequence": list(s.one_based()),
                        },
                    ),
                )
            result.instances[f"n{n}_k{k}"] = count
    return result
