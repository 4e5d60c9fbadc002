"""Explicit degree-8 expander on the torus ``Z_m x Z_m``.

Each step consumes a 3-bit label: bit 0 picks the sign, bit 1 adds one, bit
2 picks the axis. The eight maps are ``(x +- 2y, y)``, ``(x +- (2y+1), y)``,
``(x, y +- 2x)`` and ``(x, y +- (2x+1))``, all mod ``m``. Every map is a
bijection whose inverse is also in the family, so the walk matrix is
symmetric and doubly stochastic.
"""

import math
from dataclasses import dataclass

import numpy as np

from readk_prg._bits import BitArray, mask

DEGREE = 8
LABEL_BITS = 3
BASE_SPECTRAL_BOUND = 5 * math.sqrt(2) / 8


@dataclass(frozen=True)
class ExpanderSpec:
    """A powered walk on the ``m x m`` torus.

    Attributes:
        m: Side of the torus.
        p: Steps per powered move.
        base_bound: Second-eigenvalue bound of one step.
    """

    m: int
    p: int
    base_bound: float = BASE_SPECTRAL_BOUND

    @property
    def degree(self) -> int:
        return DEGREE

    @property
    def label_bits(self) -> int:
        return LABEL_BITS * self.p

    @property
    def spectral_bound(self) -> float:
        return self.base_bound**self.p


def _step(u: BitArray, v: BitArray, label: BitArray, m: int) -> tuple[BitArray, BitArray]:
    sgn = label & 1
    c = (label >> 1) & 1
    axis = (label >> 2) & 1
    du = (2 * v + c) % m
    dv = (2 * u + c) % m
    # m - d stays non-negative, so unsigned arrays work unchanged
    su = ((1 - sgn) * du + sgn * (m - du)) % m
    sv = ((1 - sgn) * dv + sgn * (m - dv)) % m
    return (u + (1 - axis) * su) % m, (v + axis * sv) % m


def expander_neighbor(vertex: tuple[int, int], label: int, spec: ExpanderSpec) -> tuple[int, int]:
    """Apply ``spec.p`` steps, consuming label bits three at a time from the bottom.

    Raises:
        ValueError: If ``label`` does not fit in ``3 * p`` bits.
    """
    if label < 0 or label >> spec.label_bits:
        raise ValueError(f"Label {label} does not fit in {spec.label_bits} bits")
    u, v = vertex
    for step in range(spec.p):
        u, v = _step(u, v, (label >> (LABEL_BITS * step)) & 0b111, spec.m)
    return u, v


def walk_embedded(x: BitArray, label: BitArray, spec: ExpanderSpec, width: int) -> BitArray:
    """Walk from the vertex encoding ``x`` and truncate back to ``width`` bits.

    ``x`` is split as ``u = x mod m``, ``v = x // m`` with ``m`` a power of
    two and ``m * m >= 2^width``.
    """
    half = spec.m.bit_length() - 1
    u = x & mask(half)
    v = x >> half
    for step in range(spec.p):
        u, v = _step(u, v, (label >> (LABEL_BITS * step)) & 0b111, spec.m)
    return (u | (v << half)) & mask(width)


def walk_matrix(m: int) -> np.ndarray:
    """Normalised adjacency matrix of one step, vertices indexed ``u + m*v``."""
    size = m * m
    matrix = np.zeros((size, size), dtype=np.float64)
    for u in range(m):
        for v in range(m):
            for label in range(DEGREE):
                nu, nv = _step(u, v, label, m)
                matrix[u + m * v, nu + m * nv] += 1.0 / DEGREE
    return matrix


def second_eigenvalue(m: int) -> float:
    """Second largest (signed) eigenvalue of the one-step walk matrix."""
    eigenvalues = np.linalg.eigvalsh(walk_matrix(m))
    return float(eigenvalues[-2])


def power_iteration_second_eigenvalue(
    m: int, iterations: int = 2000, rng_seed: int = 0
) -> float:
    """Estimate :func:`second_eigenvalue` by power iteration.

    Works on ``(M + I) / 2``, whose spectrum lies in ``[0, 1]``, with the
    uniform vector projected out, then maps the estimate back.
    """
    matrix = walk_matrix(m)
    lazy = (matrix + np.eye(len(matrix))) / 2
    rng = np.random.default_rng(rng_seed)
    vec = rng.standard_normal(len(matrix))
    estimate = 0.0
    for _ in range(iterations):
        vec -= vec.mean()
        nxt = lazy @ vec
        norm = np.linalg.norm(nxt)
        if norm == 0:
            return -1.0
        estimate = float(vec @ nxt / (vec @ vec))
        vec = nxt / norm
    return 2 * estimate - 1
