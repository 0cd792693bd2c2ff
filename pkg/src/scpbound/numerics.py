"""Log-domain helpers shared by the bound computations.

Binomial coefficients are evaluated as log-gamma sums in double precision;
C(n, k) overflows 64-bit integers for n in the thousands. Strict
comparisons carry a relative guard band so a cover is never certified on
floating-point noise: near-ties resolve toward "condition not satisfied".
"""

from __future__ import annotations

import math
from typing import Iterable

#: relative guard band for strict inequalities evaluated in the log domain
GUARD = 1e-12

NEG_INF = float("-inf")


def log_comb(a: int, k: int) -> float:
    """log C(a, k), or -inf when the coefficient is zero."""
    if a < 0 or k < 0:
        raise ValueError(f"binomial arguments must be non-negative, got C({a}, {k})")
    if k > a:
        return NEG_INF
    return math.lgamma(a + 1) - math.lgamma(k + 1) - math.lgamma(a - k + 1)


def log_sum_exp(values: Iterable[float]) -> float:
    """log(sum(exp(v))) accumulated in the order given; -inf for empty input."""
    vals = [v for v in values if v != NEG_INF]
    if not vals:
        return NEG_INF
    top = max(vals)
    return top + math.log(math.fsum(math.exp(v - top) for v in vals))


def log_strictly_less(lhs: float, rhs: float) -> bool:
    """lhs < rhs in the log domain, with the guard band resolving ties to False."""
    if lhs == NEG_INF:
        return rhs > NEG_INF
    if rhs == NEG_INF:
        return False
    return lhs < rhs - GUARD


def strictly_less_than_one(value: float) -> bool:
    """value < 1 with the relative guard band (value is a linear-domain sum >= 0)."""
    if value <= 0.0:
        return True
    return math.log(value) < -GUARD
