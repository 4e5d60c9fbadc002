"""Exact check of the hybrid inequality for product distributions.

For a split of the variables into ``Y`` and its complement ``Z``, compare
``mu1 = U^Y x D'^Z`` with ``mu2 = D^Y x D'^Z``. The gap between the two
acceptance probabilities is an average over ``b ~ D'`` of restricted gaps,
so it never exceeds the largest restricted gap
``max_b |Pr_U[B|_{Z=b} = 1] - Pr_D[B|_{Z=b} = 1]|``.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from readk_prg._bits import spread_bits
from readk_prg._generators import Mode, build_inw
from readk_prg._harness.fooling import SeedGenerator, TooLargeForExhaustiveError
from readk_prg._programs import (
    DEFAULT_EXHAUSTIVE_CAP,
    ObliviousBranchingProgram,
    evaluate_many,
    random_obp,
)
from readk_prg._sequences import two_pass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Distribution:
    """Enumerable distribution on ``width``-bit strings.

    ``weights[v] / total`` is the probability of value ``v``.
    """

    width: int
    weights: np.ndarray
    total: int

    @classmethod
    def uniform(cls, width: int) -> "Distribution":
        return cls(width, np.ones(1 << width, dtype=np.int64), 1 << width)

    @classmethod
    def from_generator(cls, G: SeedGenerator) -> "Distribution":
        """Output distribution of ``G`` over all ``2^s`` seeds."""
        outputs = G.expand_many(np.arange(1 << G.s, dtype=np.uint64))
        weights = np.bincount(
            outputs.astype(np.int64), minlength=1 << G.output_length
        ).astype(np.int64)
        return cls(G.output_length, weights, 1 << G.s)

    @classmethod
    def point(cls, width: int, value: int) -> "Distribution":
        weights = np.zeros(1 << width, dtype=np.int64)
        weights[value] = 1
        return cls(width, weights, 1)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights)


@dataclass(frozen=True)
class HybridReport:
    """Both sides of the hybrid inequality, as exact fractions.

    ``argmax`` is the ``Z`` assignment (bit ``j`` for the ``j``-th variable of
    ``Z``) that attains the restricted maximum.
    """

    y: tuple[int, ...]
    z: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction
    argmax: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict[str, Any]:
        return {
            "y": [v + 1 for v in self.y],
            "z": [v + 1 for v in self.z],
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "argmax": self.argmax,
            "holds": self.holds,
        }


def _truth_table(
    B: ObliviousBranchingProgram, y: Sequence[int], z: Sequence[int]
) -> np.ndarray:
    """``M[b, a] = B(x)`` where ``x`` carries ``a`` on ``Y`` and ``b`` on ``Z``."""
    a = np.arange(1 << len(y), dtype=np.uint64)
    b = np.arange(1 << len(z), dtype=np.uint64)
    xs = spread_bits(b, z)[:, None] | spread_bits(a, y)[None, :]
    return evaluate_many(B, xs.ravel()).reshape(len(b), len(a)).astype(np.int64)


def hybrid_check(
    B: ObliviousBranchingProgram,
    y: Sequence[int],
    d: Distribution,
    d_prime: Distribution,
    *,
    input_cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> HybridReport:
    """Compute both sides of the hybrid inequality by full enumeration.

    The maximum ranges over the support of ``d_prime``.

    Raises:
        TooLargeForExhaustiveError: If ``n`` exceeds ``input_cap``.
        ValueError: If ``y`` is not a set of variables of ``B`` or the
            distribution widths do not match ``|Y|`` and ``|Z|``.
    """
    if B.n > input_cap:
        raise TooLargeForExhaustiveError(
            f"Hybrid check enumerates all 2^{B.n} inputs; n exceeds the cap {input_cap}"
        )
    ys = tuple(sorted(set(y)))
    if len(ys) != len(y) or any(not 0 <= v < B.n for v in ys):
        raise ValueError(f"Y must be distinct variables in [1, {B.n}]")
    zs = tuple(v for v in range(B.n) if v not in set(ys))
    if d.width != len(ys) or d_prime.width != len(zs):
        raise ValueError(
            f"Distribution widths ({d.width}, {d_prime.width}) do not match |Y|={len(ys)}, |Z|={len(zs)}"
        )

    M = _truth_table(B, ys, zs)
    uniform_rows = M.sum(axis=1)  # accepting count over a ~ U, per b
    d_rows = M @ d.weights  # accepting weight over a ~ D, per b
    # per-row gap scaled by 2^|Y| * d.total
    gaps = np.abs(uniform_rows * d.total - d_rows * (1 << len(ys)))
    scale = (1 << len(ys)) * d.total

    support = d_prime.support
    argmax = int(support[np.argmax(gaps[support])])
    rhs = Fraction(int(gaps[argmax]), scale)
    signed = int(np.dot(d_prime.weights, uniform_rows * d.total - d_rows * (1 << len(ys))))
    lhs = Fraction(abs(signed), scale * d_prime.total)
    return HybridReport(y=ys, z=zs, lhs=lhs, rhs=rhs, argmax=argmax)


def hybrid_battery(
    trials: int = 100,
    n: int = 8,
    rng_seed: int = 0,
    *,
    w: int = 4,
    toy_aux: int = 2,
) -> list[HybridReport]:
    """Random two-pass programs against toy-mode generator marginals.

    Trial ``i`` draws everything from ``default_rng([rng_seed, i])``: a
    random ``Y`` of size 2 to ``n - 1``, ``D`` the output distribution of a
    toy generator on ``|Y|`` bits and ``D'`` the one on ``|Z|`` bits.
    """
    reports = []
    for i in range(trials):
        rng = np.random.default_rng([rng_seed, i])
        perm = [int(v) for v in rng.permutation(n)]
        B = random_obp(two_pass(perm).elems, n, w, [rng_seed, i, 1])
        size = int(rng.integers(2, n))
        y = sorted(int(v) for v in rng.choice(n, size=size, replace=False))
        d = Distribution.from_generator(build_inw(size, 4, w, 0.1, Mode.TOY, toy_aux))
        d_prime = Distribution.from_generator(
            build_inw(n - size, 4, w, 0.1, Mode.TOY, toy_aux)
        )
        report = hybrid_check(B, y, d, d_prime)
        if not report.holds:
            logger.warning("Hybrid inequality fails on trial %d: %s", i, report.to_dict())
        reports.append(report)
    return reports
