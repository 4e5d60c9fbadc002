"""Layered oblivious branching programs."""

import logging
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from readk_prg._bits import BATCH_WIDTH_LIMIT, bits_to_int, mask
from readk_prg._sequences import ReadKSequence, missing_reads, validate

logger = logging.getLogger(__name__)

DEFAULT_EXHAUSTIVE_CAP = 24
_CHUNK = 1 << 20


class InvalidProgramError(ValueError):
    """Raised when program fields violate the layered representation."""


class InputLengthMismatchError(ValueError):
    """Raised when an input does not have exactly ``n`` bits."""


@dataclass(frozen=True)
class Layer:
    """One layer: the variable it reads and the successor state for each bit."""

    var: int
    t0: tuple[int, ...]
    t1: tuple[int, ...]


@dataclass(frozen=True)
class ObliviousBranchingProgram:
    """A width-``w`` layered program reading one fixed variable per layer.

    States are ``0 .. w-1`` at every level; acceptance is membership of the
    final state in ``accepting``.
    """

    n: int
    w: int
    layers: tuple[Layer, ...]
    start: int = 0
    accepting: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidProgramError(f"n must be non-negative, got {self.n}")
        if self.w < 1:
            raise InvalidProgramError(f"Width must be at least 1, got {self.w}")
        if not 0 <= self.start < self.w:
            raise InvalidProgramError(f"Start state {self.start} outside [0, {self.w})")
        bad = [q for q in self.accepting if not 0 <= q < self.w]
        if bad:
            raise InvalidProgramError(f"Accepting states {sorted(bad)} outside [0, {self.w})")
        for depth, layer in enumerate(self.layers):
            if not 0 <= layer.var < self.n:
                raise InvalidProgramError(
                    f"Layer {depth} reads variable {layer.var + 1} outside [1, {self.n}]"
                )
            for name, t in (("t0", layer.t0), ("t1", layer.t1)):
                if len(t) != self.w:
                    raise InvalidProgramError(
                        f"Layer {depth} {name} has {len(t)} entries, width is {self.w}"
                    )
                if any(not 0 <= q < self.w for q in t):
                    raise InvalidProgramError(
                        f"Layer {depth} {name} maps outside [0, {self.w})"
                    )

    @property
    def length(self) -> int:
        return len(self.layers)

    @cached_property
    def read_counts(self) -> Counter[int]:
        return Counter(layer.var for layer in self.layers)

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        t0 = np.array([layer.t0 for layer in self.layers], dtype=np.int64).reshape(-1, self.w)
        t1 = np.array([layer.t1 for layer in self.layers], dtype=np.int64).reshape(-1, self.w)
        acc = np.zeros(self.w, dtype=bool)
        acc[list(self.accepting)] = True
        return t0, t1, acc


@dataclass(frozen=True)
class Restriction:
    """Fixed values ``values[j]`` for variables ``fixed_vars[j]``."""

    fixed_vars: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.fixed_vars) != len(self.values):
            raise ValueError(
                f"{len(self.fixed_vars)} fixed variables but {len(self.values)} values"
            )
        if len(set(self.fixed_vars)) != len(self.fixed_vars):
            raise ValueError("Fixed variables must be distinct")
        if any(b not in (0, 1) for b in self.values):
            raise ValueError("Restriction values must be bits")

    def free_variables(self, n: int) -> tuple[int, ...]:
        fixed = set(self.fixed_vars)
        return tuple(v for v in range(n) if v not in fixed)

    def merge(self, n: int, y: int) -> int:
        """Full input whose free coordinates come from ``y`` (in order) and fixed ones from the restriction."""
        x = 0
        for j, v in enumerate(self.free_variables(n)):
            x |= ((y >> j) & 1) << v
        for v, b in zip(self.fixed_vars, self.values, strict=True):
            x |= b << v
        return x


@dataclass(frozen=True)
class AcceptanceResult:
    """Exact or sampled acceptance count.

    Attributes:
        accepting_count: Accepting inputs (or accepting samples).
        total_count: ``2^n`` for exact methods, the sample count otherwise.
        method: ``"dp"``, ``"exhaustive"`` or ``"sampled"``.
    """

    accepting_count: int
    total_count: int
    method: str

    @property
    def probability(self) -> Fraction:
        return Fraction(self.accepting_count, self.total_count)

    @property
    def exact(self) -> bool:
        return self.method != "sampled"


@dataclass(frozen=True)
class ReadProfile:
    """Layer labels of a program with per-variable read counts."""

    elems: tuple[int, ...]
    counts: dict[int, int]
    k: int
    exact: bool

    def as_sequence(self, n: int) -> ReadKSequence:
        """The profile as a read-k sequence; requires ``exact``."""
        return validate(self.elems, n, self.k)


def _coerce_input(B: ObliviousBranchingProgram, x: int | Sequence[int]) -> int:
    if isinstance(x, int):
        if x < 0 or x >> B.n:
            raise InputLengthMismatchError(f"Input {x} does not fit in n={B.n} bits")
        return x
    if len(x) != B.n:
        raise InputLengthMismatchError(f"Input has {len(x)} bits, program reads n={B.n}")
    return bits_to_int(x)


def evaluate(B: ObliviousBranchingProgram, x: int | Sequence[int]) -> int:
    """Follow ``x`` from the start state; 1 when the final state accepts.

    Args:
        B: Program to run.
        x: An ``n``-bit int (bit ``i`` is variable ``i``) or a 0/1 sequence of length ``n``.

    Raises:
        InputLengthMismatchError: If ``x`` does not have ``n`` bits.
    """
    bits = _coerce_input(B, x)
    state = B.start
    for layer in B.layers:
        state = layer.t1[state] if (bits >> layer.var) & 1 else layer.t0[state]
    return int(state in B.accepting)


def evaluate_many(B: ObliviousBranchingProgram, xs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`evaluate` over a ``uint64`` array of inputs.

    Returns:
        Boolean array, ``True`` where the input is accepted.
    """
    if B.n > BATCH_WIDTH_LIMIT:
        return np.array([evaluate(B, int(x)) for x in xs], dtype=bool)
    xs = np.asarray(xs, dtype=np.uint64)
    t0, t1, acc = B._tables
    state = np.full(xs.shape, B.start, dtype=np.int64)
    for depth, layer in enumerate(B.layers):
        bit = ((xs >> np.uint64(layer.var)) & np.uint64(1)).astype(bool)
        state = np.where(bit, t1[depth][state], t0[depth][state])
    return acc[state]


def is_read_once(B: ObliviousBranchingProgram) -> bool:
    return all(c <= 1 for c in B.read_counts.values())


def _read_once_count(B: ObliviousBranchingProgram) -> int:
    counts = [0] * B.w
    counts[B.start] = 1
    for layer in B.layers:
        nxt = [0] * B.w
        for q, c in enumerate(counts):
            if c:
                nxt[layer.t0[q]] += c
                nxt[layer.t1[q]] += c
        counts = nxt
    accepted = sum(counts[q] for q in B.accepting)
    return accepted << (B.n - B.length)


def _exhaustive_count(B: ObliviousBranchingProgram) -> int:
    total = 1 << B.n
    accepted = 0
    for lo in range(0, total, _CHUNK):
        xs = np.arange(lo, min(lo + _CHUNK, total), dtype=np.uint64)
        accepted += int(np.count_nonzero(evaluate_many(B, xs)))
    return accepted


def random_inputs(n: int, size: int, rng: np.random.Generator) -> np.ndarray | list[int]:
    """Uniform ``n``-bit inputs; an array when ``n`` fits the batched path."""
    if n <= BATCH_WIDTH_LIMIT:
        if n == 0:
            return np.zeros(size, dtype=np.uint64)
        return rng.integers(0, 1 << n, size=size, dtype=np.uint64)
    nbytes = (n + 7) // 8
    return [int.from_bytes(rng.bytes(nbytes), "little") & mask(n) for _ in range(size)]


def acceptance_probability_uniform(
    B: ObliviousBranchingProgram,
    *,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    samples: int = 10**6,
    rng_seed: int = 0,
) -> AcceptanceResult:
    """Acceptance probability of ``B`` on uniform input.

    Read-once programs use a forward count over states, which is exact for
    any ``n``. Otherwise all ``2^n`` inputs are enumerated when
    ``n <= exhaustive_cap``; a layer count would treat repeated reads as
    fresh bits and is not used. Larger programs fall back to sampling.
    """
    if is_read_once(B):
        return AcceptanceResult(_read_once_count(B), 1 << B.n, "dp")
    if B.n <= exhaustive_cap:
        return AcceptanceResult(_exhaustive_count(B), 1 << B.n, "exhaustive")
    logger.warning(
        "n=%d exceeds the exhaustive cap %d, sampling %d inputs", B.n, exhaustive_cap, samples
    )
    rng = np.random.default_rng(rng_seed)
    xs = random_inputs(B.n, samples, rng)
    if isinstance(xs, np.ndarray):
        hits = int(np.count_nonzero(evaluate_many(B, xs)))
    else:
        hits = sum(evaluate(B, x) for x in xs)
    return AcceptanceResult(hits, samples, "sampled")


def restrict_program(B: ObliviousBranchingProgram, r: Restriction) -> ObliviousBranchingProgram:
    """Fix the variables of ``r`` and relabel the rest densely in increasing order.

    Fixed layers are composed into the next free layer, or into the
    accepting set when no free layer follows.
    """
    bad = [v for v in r.fixed_vars if not 0 <= v < B.n]
    if bad:
        raise ValueError(f"Restricted variables {[v + 1 for v in bad]} outside [1, {B.n}]")
    fixed = dict(zip(r.fixed_vars, r.values, strict=True))
    free = r.free_variables(B.n)
    rank = {v: j for j, v in enumerate(free)}

    pending = tuple(range(B.w))  # composition of the fixed layers seen so far
    layers: list[Layer] = []
    for layer in B.layers:
        if layer.var in fixed:
            t = layer.t1 if fixed[layer.var] else layer.t0
            pending = tuple(t[q] for q in pending)
        else:
            layers.append(
                Layer(
                    var=rank[layer.var],
                    t0=tuple(layer.t0[q] for q in pending),
                    t1=tuple(layer.t1[q] for q in pending),
                )
            )
            pending = tuple(range(B.w))
    accepting = frozenset(q for q in range(B.w) if pending[q] in B.accepting)
    return ObliviousBranchingProgram(
        n=len(free), w=B.w, layers=tuple(layers), start=B.start, accepting=accepting
    )


def read_profile(B: ObliviousBranchingProgram) -> ReadProfile:
    """Layer labels in order, with ``k`` the largest read count."""
    counts = {v: B.read_counts.get(v, 0) for v in range(B.n)}
    k = max(counts.values(), default=0)
    exact = k >= 1 and all(c == k for c in counts.values())
    return ReadProfile(
        elems=tuple(layer.var for layer in B.layers), counts=counts, k=k, exact=exact
    )


def pad_to_exact_k(B: ObliviousBranchingProgram, k: int | None = None) -> ObliviousBranchingProgram:
    """Append identity layers until every variable is read exactly ``k`` times.

    Missing reads are added in ascending variable order, matching
    :func:`readk_prg._sequences.pad_sequence_to_exact_k`.
    """
    target = k if k is not None else max(read_profile(B).k, 1)
    identity = tuple(range(B.w))
    extra = missing_reads(B.read_counts, range(B.n), target)
    if not extra:
        return B
    return ObliviousBranchingProgram(
        n=B.n,
        w=B.w,
        layers=B.layers + tuple(Layer(var=v, t0=identity, t1=identity) for v in extra),
        start=B.start,
        accepting=B.accepting,
    )


def with_width(B: ObliviousBranchingProgram, w: int) -> ObliviousBranchingProgram:
    """Pad to width ``w`` with non-accepting self-looping states."""
    if w < B.w:
        raise InvalidProgramError(f"Cannot shrink width {B.w} to {w}")
    dead = tuple(range(B.w, w))
    return ObliviousBranchingProgram(
        n=B.n,
        w=w,
        layers=tuple(
            Layer(var=layer.var, t0=layer.t0 + dead, t1=layer.t1 + dead)
            for layer in B.layers
        ),
        start=B.start,
        accepting=B.accepting,
    )


def program_over(
    order: Iterable[int],
    n: int,
    w: int,
    step: Callable[[int, int, int], int],
    start: int = 0,
    accepting: Iterable[int] = (),
) -> ObliviousBranchingProgram:
    """Build a program reading ``order`` whose layer ``j`` maps ``q`` to ``step(j, q, bit)``."""
    layers = tuple(
        Layer(
            var=v,
            t0=tuple(step(j, q, 0) for q in range(w)),
            t1=tuple(step(j, q, 1) for q in range(w)),
        )
        for j, v in enumerate(order)
    )
    return ObliviousBranchingProgram(
        n=n, w=w, layers=layers, start=start, accepting=frozenset(accepting)
    )
