"""Standard and adversarial program constructions used as distinguishers."""

from collections.abc import Sequence

import numpy as np

from readk_prg._programs.program import (
    InvalidProgramError,
    Layer,
    ObliviousBranchingProgram,
    program_over,
)


class NotPowerOfTwoError(ValueError):
    """Raised when the address function is requested for a non power of two."""


def build_constant(n: int, value: bool, order: Sequence[int] = ()) -> ObliviousBranchingProgram:
    """A width-1 program reading ``order`` that always outputs ``value``."""
    return program_over(
        order, n, 1, lambda j, q, b: 0, accepting=(0,) if value else ()
    )


def build_mod_counter(
    order: Sequence[int],
    n: int,
    modulus: int,
    target: int,
    weights: Sequence[int] | None = None,
) -> ObliviousBranchingProgram:
    """Accept iff the weighted sum of the bits read along ``order`` is ``target`` mod ``modulus``.

    Args:
        order: Variables in reading order; repeated reads add their weight again.
        n: Number of variables.
        modulus: Counter size, which is also the width.
        target: Accepted residue.
        weights: Weight of each position of ``order``; all ones by default.
    """
    if modulus < 1:
        raise InvalidProgramError(f"Modulus must be at least 1, got {modulus}")
    ws = list(weights) if weights is not None else [1] * len(order)
    if len(ws) != len(order):
        raise InvalidProgramError(
            f"{len(ws)} weights for a reading order of length {len(order)}"
        )
    return program_over(
        order,
        n,
        modulus,
        lambda j, q, b: (q + b * ws[j]) % modulus,
        accepting=(target % modulus,),
    )


def build_parity(n: int, order: Sequence[int] | None = None) -> ObliviousBranchingProgram:
    """XOR of the bits read along ``order`` (identity order by default)."""
    return build_mod_counter(list(range(n)) if order is None else order, n, 2, 1)


def build_address_function(n_addr: int) -> ObliviousBranchingProgram:
    """Read-twice program computing ``y[z]`` on ``y`` of ``n_addr`` bits and ``z`` of ``log2(n_addr)`` bits.

    Variables ``0 .. n_addr-1`` are ``y``; the next ``log2(n_addr)`` are the
    bits of ``z``, least significant first. The program reads ``y``, then
    ``z`` accumulating its value in the state, then ``y`` again, moving to an
    accept or reject sink at position ``z``. Width is ``n_addr + 2``.

    Raises:
        NotPowerOfTwoError: If ``n_addr`` is not a power of two.
    """
    if n_addr < 1 or n_addr & (n_addr - 1):
        raise NotPowerOfTwoError(f"Address length must be a power of two, got {n_addr}")
    bits = n_addr.bit_length() - 1
    n = n_addr + bits
    w = n_addr + 2
    accept, reject = n_addr, n_addr + 1
    identity = tuple(range(w))

    layers = [Layer(var=i, t0=identity, t1=identity) for i in range(n_addr)]
    for b in range(bits):
        step = 1 << b
        layers.append(
            Layer(
                var=n_addr + b,
                t0=identity,
                t1=tuple(q + step if q < n_addr else q for q in range(w)),
            )
        )
    for i in range(n_addr):
        t0 = list(identity)
        t1 = list(identity)
        t0[i], t1[i] = reject, accept
        layers.append(Layer(var=i, t0=tuple(t0), t1=tuple(t1)))

    return ObliviousBranchingProgram(
        n=n, w=w, layers=tuple(layers), start=0, accepting=frozenset({accept})
    )


def random_obp(
    order: Sequence[int], n: int, w: int, rng_seed: int | Sequence[int]
) -> ObliviousBranchingProgram:
    """Uniformly random transitions per layer and a random accepting set.

    Deterministic in ``rng_seed`` (anything ``numpy.random.default_rng``
    accepts as a seed).
    """
    if w < 2:
        raise InvalidProgramError(f"Random programs need width >= 2, got {w}")
    rng = np.random.default_rng(rng_seed)
    layers = tuple(
        Layer(
            var=int(v),
            t0=tuple(int(q) for q in rng.integers(0, w, size=w)),
            t1=tuple(int(q) for q in rng.integers(0, w, size=w)),
        )
        for v in order
    )
    accepting = frozenset(int(q) for q in np.flatnonzero(rng.random(w) < 0.5))
    return ObliviousBranchingProgram(
        n=n, w=w, layers=layers, start=0, accepting=accepting
    )
