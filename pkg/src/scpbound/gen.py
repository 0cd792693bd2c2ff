"""Seeded random instance generators.

Three models: independent Bernoulli entries at a fixed density, rows
with an exact ones-count (a uniform column subset per row), and planted
two-block matrices with per-block densities. All randomness comes from
the package's own 64-bit generator, so a GenSpec reproduces the same
matrix byte-for-byte on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .matrix import BinaryMatrix
from .rng import SplitMix64

__all__ = ["GenSpec", "PlantedInstance", "gen_constant_density", "gen_karp", "gen_planted", "generate"]

MODELS = ("constant-density", "karp", "planted")


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one generated instance.

    delta drives the constant-density and karp models; the planted model
    ignores it and reads the block targets d1..d4 (ordered top-left,
    top-right, bottom-left, bottom-right) with split fractions given by
    mu and nu.
    """

    model: str
    m: int
    n: int
    delta: float = 0.0
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0
    d4: float = 0.0
    mu: float = 0.0
    nu: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.m < 1 or self.n < 1:
            raise ValueError(f"dimensions must be positive, got {self.m}x{self.n}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")
        for name in ("d1", "d2", "d3", "d4"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class PlantedInstance:
    """A planted matrix together with its true split sizes."""

    matrix: BinaryMatrix
    r: int
    c: int


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def gen_constant_density(spec: GenSpec) -> BinaryMatrix:
    """Independent Bernoulli(delta) entries, row-major draw order."""
    rng = SplitMix64(spec.seed)
    rows = []
    for _ in range(spec.m):
        bits = 0
        for j in range(spec.n):
            if rng.bernoulli(spec.delta):
                bits |= 1 << j
        rows.append(bits)
    return BinaryMatrix(spec.m, spec.n, tuple(rows))


def gen_karp(spec: GenSpec) -> BinaryMatrix:
    """Each row gets a uniform t-subset of columns, t = round(delta*n).

    Rounding is half-up so boundary densities are unambiguous; rows are
    drawn independently, within a row columns are sampled without
    replacement.
    """
    t = _round_half_up(spec.delta * spec.n)
    rng = SplitMix64(spec.seed)
    rows = []
    for _ in range(spec.m):
        bits = 0
        for j in rng.sample(spec.n, t):
            bits |= 1 << j
        rows.append(bits)
    return BinaryMatrix(spec.m, spec.n, tuple(rows))


def gen_planted(spec: GenSpec) -> PlantedInstance:
    """Four Bernoulli blocks with split r = round(m(1+mu)/2), likewise c.

    The returned instance keeps the true split so tests can compare a
    recovered decomposition against it. Entries are drawn row-major, the
    per-entry density switching at the block boundaries.
    """
    r = _round_half_up(spec.m * (1.0 + spec.mu) / 2.0)
    c = _round_half_up(spec.n * (1.0 + spec.nu) / 2.0)
    if not 1 <= r < spec.m:
        raise ValueError(f"degenerate row split r={r} for m={spec.m}, mu={spec.mu}")
    if not 1 <= c < spec.n:
        raise ValueError(f"degenerate column split c={c} for n={spec.n}, nu={spec.nu}")
    rng = SplitMix64(spec.seed)
    rows = []
    for i in range(spec.m):
        top = i < r
        bits = 0
        for j in range(spec.n):
            left = j < c
            if top:
                density = spec.d1 if left else spec.d2
            else:
                density = spec.d3 if left else spec.d4
            if rng.bernoulli(density):
                bits |= 1 << j
        rows.append(bits)
    return PlantedInstance(BinaryMatrix(spec.m, spec.n, tuple(rows)), r, c)


def generate(spec: GenSpec) -> BinaryMatrix:
    """Dispatch on the model; planted metadata is dropped here."""
    if spec.model == "constant-density":
        return gen_constant_density(spec)
    if spec.model == "karp":
        return gen_karp(spec)
    return gen_planted(spec).matrix
