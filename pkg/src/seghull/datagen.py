"""Seeded point-distribution generators for the benchmark scenarios.

Randomness comes from splitmix64: state advances by the 64-bit golden-ratio
increment 0x9E3779B97F4A7C15 and each output is the standard finalizer
(xor-shift 30, multiply 0xBF58476D1CE4E5B9, xor-shift 27, multiply
0x94D049BB133111EB, xor-shift 31) mapped to [0, 1) via the top 53 bits.
The draw k of seed s therefore depends only on (s, k), which makes the
vectorized stream and the scalar ``rng_next`` walk the same sequence.

Each point consumes a fixed number of consecutive draws (kind-dependent),
so point sets are byte-identical for identical (kind, n, seed, band).
"""

from dataclasses import dataclass

import numpy as np

from .geometry import PointSet

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_TO_UNIT = 2.0 ** -53

KINDS_2D = ("uniform-disk", "on-circle", "near-circle")
KINDS_3D = ("uniform-ball", "on-sphere", "near-sphere")
KINDS = KINDS_2D + KINDS_3D


@dataclass(frozen=True)
class Distribution:
    """One benchmark scenario: n points of ``kind`` from ``seed``; ``band``
    is the annulus/shell thickness used only by the near-* kinds."""

    kind: str
    n: int
    seed: int
    band: float = 0.01

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if self.n < 0:
            raise ValueError(f"point count must be >= 0, got {self.n}")
        if not 0.0 < self.band < 1.0:
            raise ValueError(f"band must be in (0, 1), got {self.band}")

    @property
    def dim(self) -> int:
        return 2 if self.kind in KINDS_2D else 3


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return z ^ (z >> np.uint64(31))


def rng_next(state: int) -> tuple[float, int]:
    """One splitmix64 step: returns (uniform in [0,1), new state)."""
    with np.errstate(over="ignore"):  # 64-bit wraparound is the update rule
        state = np.uint64(state & 0xFFFFFFFFFFFFFFFF) + _GAMMA
        value = float(_mix(state) >> np.uint64(11)) * _TO_UNIT
    return value, int(state)


def _uniform_stream(seed: int, count: int) -> np.ndarray:
    """Draws 1..count of ``seed`` as float64 in [0, 1), vectorized."""
    steps = np.arange(1, count + 1, dtype=np.uint64)
    states = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + steps * _GAMMA
    return (_mix(states) >> np.uint64(11)).astype(np.float64) * _TO_UNIT


def _gaussian_triple(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Box-Muller on 4 uniform columns -> 3 standard normals per row."""
    r1 = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    r2 = np.sqrt(-2.0 * np.log1p(-u[:, 1]))
    return (r1 * np.cos(2.0 * np.pi * u[:, 2]),
            r1 * np.sin(2.0 * np.pi * u[:, 2]),
            r2 * np.cos(2.0 * np.pi * u[:, 3]))


def _unit_directions(u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    gx, gy, gz = _gaussian_triple(u)
    norm = np.sqrt(gx * gx + gy * gy + gz * gz)
    # a zero triple is astronomically unlikely; fall back deterministically
    safe = norm > 0
    norm = np.where(safe, norm, 1.0)
    return (np.where(safe, gx / norm, 1.0), np.where(safe, gy / norm, 0.0),
            np.where(safe, gz / norm, 0.0))


_DRAWS_PER_POINT = {
    "uniform-disk": 2, "on-circle": 1, "near-circle": 2,
    "uniform-ball": 5, "on-sphere": 4, "near-sphere": 5,
}


def generate(dist: Distribution) -> PointSet:
    """Deterministic PointSet for the given distribution."""
    if dist.n == 0:
        return PointSet.empty(dist.dim)
    cols = _DRAWS_PER_POINT[dist.kind]
    u = _uniform_stream(dist.seed, dist.n * cols).reshape(dist.n, cols)

    if dist.kind == "uniform-disk":
        r, theta = np.sqrt(u[:, 0]), 2.0 * np.pi * u[:, 1]
        return PointSet((r * np.cos(theta), r * np.sin(theta)))
    if dist.kind == "on-circle":
        theta = 2.0 * np.pi * u[:, 0]
        return PointSet((np.cos(theta), np.sin(theta)))
    if dist.kind == "near-circle":
        theta = 2.0 * np.pi * u[:, 0]
        r = 1.0 - dist.band * u[:, 1]
        return PointSet((r * np.cos(theta), r * np.sin(theta)))
    if dist.kind == "uniform-ball":
        r = np.cbrt(u[:, 0])
        dx, dy, dz = _unit_directions(u[:, 1:])
        return PointSet((r * dx, r * dy, r * dz))
    if dist.kind == "on-sphere":
        dx, dy, dz = _unit_directions(u)
        return PointSet((dx, dy, dz))
    # near-sphere
    r = 1.0 - dist.band * u[:, 0]
    dx, dy, dz = _unit_directions(u[:, 1:])
    return PointSet((r * dx, r * dy, r * dz))
