"""First-moment (union-bound) cover-size guarantees.

Pick k columns uniformly at random; row i is missed with probability
p_i = C(n - d_i, k) / C(n, k) <= (1 - d_i/n)^k. When the missed-row
probabilities sum below 1, a cover of size k exists. The operations here
return the smallest such k, in three variants: the power-form condition
sum, the exact hypergeometric sum, and the closed-form homogeneous bound
driven by a single density.

Condition sums are accumulated over the sorted ones-count multiset, so
results are bit-identical under any row or column permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleInstanceError, InternalInvariantError
from .matrix import BinaryMatrix, RowProfile, row_profile
from .numerics import log_comb, strictly_less_than_one

__all__ = [
    "BoundResult",
    "HomogeneousBounds",
    "exact_uncovered_prob",
    "first_moment_bound",
    "hypergeometric_first_moment_bound",
    "homogeneous_bound",
    "homogeneous_threshold",
    "homogeneous_bound_certified",
]


@dataclass(frozen=True)
class BoundResult:
    """Certified cover cardinality k together with its witnessing values.

    ``condition_at_k`` is the method's condition sum at k and
    ``condition_before`` the sum at k-1 (at n when no k exists, documenting
    the failure). ``sound`` marks variants whose k is a valid guarantee for
    the instance; the literal homogeneous variant on mixed densities is not.
    """

    method: str
    k: int | None
    condition_at_k: float | None
    condition_before: float | None
    sound: bool

    @property
    def found(self) -> bool:
        return self.k is not None


@dataclass(frozen=True)
class HomogeneousBounds:
    """Certified (min-density) and literal (max-density) homogeneous results."""

    certified: BoundResult
    literal: BoundResult
    delta_min: float
    delta_max: float


def exact_uncovered_prob(n: int, d: int, k: int) -> float:
    """P(row with d ones is missed by a uniform k-subset of n columns).

    Equals C(n-d, k)/C(n, k), computed via log-gamma: 0 when k > n-d,
    1 when k = 0, and always at most (1 - d/n)^k.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 <= d <= n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}")
    if k == 0:
        return 1.0
    if k > n - d:
        return 0.0
    return math.exp(log_comb(n - d, k) - log_comb(n, k))


def _require_coverable(profile: RowProfile) -> None:
    zeros = profile.zero_rows()
    if zeros:
        raise InfeasibleInstanceError(zeros[0] + 1)


def _sorted_ones(profile: RowProfile) -> list[int]:
    # descending d: terms ascend, and the order is permutation-canonical
    return sorted(profile.ones, reverse=True)


def power_condition_sum(profile: RowProfile, k: int) -> float:
    """Sum over rows of (1 - d_i/n)^k, in canonical order."""
    n = profile.n
    return math.fsum(((n - d) / n) ** k for d in _sorted_ones(profile))


def hypergeometric_condition_sum(profile: RowProfile, k: int) -> float:
    """Sum over rows of the exact missed-row probabilities at size k."""
    n = profile.n
    if k == 0:
        return float(profile.m)
    log_total = log_comb(n, k)
    out = 0.0
    for d in _sorted_ones(profile):
        if k <= n - d:
            out += math.exp(log_comb(n - d, k) - log_total)
    return out


def _minimal_k(condition, n: int):
    """Smallest k in 1..n with condition(k) < 1, by binary search.

    The condition sums are non-increasing in k, which justifies the
    search; the winner is re-confirmed directly at k and k-1.
    """
    if not strictly_less_than_one(condition(n)):
        return None
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if strictly_less_than_one(condition(mid)):
            hi = mid
        else:
            lo = mid + 1
    k = lo
    ok = strictly_less_than_one(condition(k))
    below = k == 1 or not strictly_less_than_one(condition(k - 1))
    if not (ok and below):
        raise InternalInvariantError(f"binary search found k={k} but direct confirmation failed")
    return k


def _search_result(method: str, condition, n: int, sound: bool) -> BoundResult:
    k = _minimal_k(condition, n)
    if k is None:
        return BoundResult(method, None, None, condition(n), sound)
    return BoundResult(method, k, condition(k), condition(k - 1), sound)


def first_moment_bound(profile: RowProfile) -> BoundResult:
    """Smallest k with sum_l (1 - d_l/n)^k < 1; sound for any 0-1 matrix.

    Raises InfeasibleInstanceError when some row has no ones, and returns
    k = None when no k <= n satisfies the condition (the instance may
    still be feasible).
    """
    _require_coverable(profile)
    return _search_result(
        "first-moment", lambda k: power_condition_sum(profile, k), profile.n, sound=True
    )


def hypergeometric_first_moment_bound(matrix: BinaryMatrix) -> BoundResult:
    """Variant of first_moment_bound with exact missed-row probabilities.

    Term-wise domination gives k at most the power-form k whenever both
    exist.
    """
    profile = row_profile(matrix)
    _require_coverable(profile)
    return _search_result(
        "hypergeometric",
        lambda k: hypergeometric_condition_sum(profile, k),
        profile.n,
        sound=True,
    )


def homogeneous_threshold(m: int, delta: float) -> float:
    """log m / |log(1 - delta)|, the real-valued homogeneous threshold."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"need 0 < delta <= 1, got {delta}")
    if delta == 1.0:
        return 0.0
    return math.log(m) / abs(math.log1p(-delta))


def homogeneous_bound(m: int, delta: float) -> int:
    """Least integer strictly above the homogeneous threshold.

    A valid cover-size guarantee when delta is at most every row density.
    """
    return math.floor(homogeneous_threshold(m, delta)) + 1


def homogeneous_bound_certified(matrix: BinaryMatrix) -> HomogeneousBounds:
    """Homogeneous bound at the minimum row density (sound), plus the
    literal maximum-density value for comparison (not sound when row
    densities differ)."""
    profile = row_profile(matrix)
    _require_coverable(profile)
    n = profile.n
    d_min = min(profile.ones)
    d_max = max(profile.ones)
    certified = _clamped_homogeneous("homogeneous", profile.m, d_min, n, sound=True)
    literal = _clamped_homogeneous("homogeneous", profile.m, d_max, n, sound=d_min == d_max)
    return HomogeneousBounds(certified, literal, d_min / n, d_max / n)


def _clamped_homogeneous(method: str, m: int, d: int, n: int, sound: bool) -> BoundResult:
    delta = d / n
    k = homogeneous_bound(m, delta)

    def witness(i: int) -> float:
        return m * (1.0 - delta) ** i

    if k > n:
        return BoundResult(method, None, None, witness(n), sound)
    return BoundResult(method, k, witness(k), witness(k - 1), sound)
