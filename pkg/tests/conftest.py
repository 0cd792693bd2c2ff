"""Shared brute-force oracles for the test suite.

Everything here is deliberately naive: exhaustive subset scans and
direct math.comb arithmetic, independent of the library's log-domain
and bit-twiddling shortcuts, so the two can check each other.
"""

from __future__ import annotations

import itertools
import math

from scpbound import BinaryMatrix, GenSpec, generate
from scpbound.matrix import column_masks


def brute_force_optimum(matrix: BinaryMatrix) -> int | None:
    """Smallest cover size by scanning all column subsets, None if infeasible."""
    if any(row == 0 for row in matrix.rows):
        return None
    masks = column_masks(matrix)
    full = (1 << matrix.m) - 1
    for size in range(1, matrix.n + 1):
        for combo in itertools.combinations(range(matrix.n), size):
            hit = 0
            for j in combo:
                hit |= masks[j]
            if hit == full:
                return size
    return None


def naive_truncation_counts(matrix: BinaryMatrix, k: int) -> tuple[int, int, int]:
    """S1, S2, S3 as exact integers: counts of k-subsets avoiding each
    single row support, pair union and triple union."""
    n = matrix.n
    rows = matrix.rows
    m = matrix.m
    s1 = sum(math.comb(n - r.bit_count(), k) for r in rows)
    s2 = sum(
        math.comb(n - (rows[i] | rows[j]).bit_count(), k)
        for i in range(m)
        for j in range(i + 1, m)
    )
    s3 = sum(
        math.comb(n - (rows[i] | rows[j] | rows[l]).bit_count(), k)
        for i in range(m)
        for j in range(i + 1, m)
        for l in range(j + 1, m)
    )
    return s1, s2, s3


def exact_union_probability(matrix: BinaryMatrix, k: int) -> float:
    """P(some row missed by a uniform k-subset), by enumerating all subsets."""
    masks = column_masks(matrix)
    full = (1 << matrix.m) - 1
    missed = 0
    total = 0
    for combo in itertools.combinations(range(matrix.n), k):
        hit = 0
        for j in combo:
            hit |= masks[j]
        total += 1
        if hit != full:
            missed += 1
    return missed / total


def feasible_instance(spec: GenSpec) -> tuple[BinaryMatrix, GenSpec]:
    """First draw at or after spec.seed with no zero row."""
    current = spec
    while True:
        matrix = generate(current)
        if all(row != 0 for row in matrix.rows):
            return matrix, current
        current = GenSpec(
            model=current.model,
            m=current.m,
            n=current.n,
            delta=current.delta,
            d1=current.d1,
            d2=current.d2,
            d3=current.d3,
            d4=current.d4,
            mu=current.mu,
            nu=current.nu,
            seed=current.seed + 1,
        )
