"""Fixed-sample-size MAE and the sequential-vs-fixed comparison.

The proportion estimate k/n from a fixed number n of Bernoulli trials has
normalized MAE

    2 * C(n-1, N0-1) * p**(N0-1) * (1-p)**(n-N0+1),   N0 = floor(n*p) + 1,

the mean-threshold form of the classic binomial mean-absolute-deviation
identity.  Matching the average sample size N/p of inverse binomial
sampling (only meaningful where N/p is an integer) gives a ratio that
tends to e * (1 + 1/(N-1))**(-(N-1)) as p -> 0 and stays above 1: the
sequential scheme pays a small, bounded MAE premium for not knowing p.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from .distributions import validate_probability, validate_success_target
from .mae import exact_normalized_mae
from .numeric_core import log_binomial, snap_nearest_int

__all__ = [
    "FixedMaeResult",
    "fixed_normalized_mae",
    "sequential_vs_fixed_ratio",
    "asymptotic_ratio",
]


@dataclass(frozen=True)
class FixedMaeResult:
    """Fixed-sample normalized MAE with the binomial threshold count N0."""

    normalized_mae: float
    N0: int


def fixed_normalized_mae(n: int, p: float) -> FixedMaeResult:
    """Normalized MAE of the proportion estimate from n Bernoulli trials."""
    n = operator.index(n)
    if n < 1:
        raise ValueError(f"sample size n must be >= 1, got {n}")
    p = validate_probability(p)
    N0 = int(math.floor(snap_nearest_int(n * p))) + 1
    if N0 > n:
        # p < 1 forces floor(n*p) <= n-1 in exact arithmetic; undo a snap
        # overshoot at p within tolerance of 1.
        N0 = n
    log_value = (
        math.log(2.0)
        + log_binomial(n - 1, N0 - 1)
        + (N0 - 1) * math.log(p)
        + (n - N0 + 1) * math.log1p(-p)
    )
    return FixedMaeResult(math.exp(log_value), N0)


def sequential_vs_fixed_ratio(N: int, p: float) -> float:
    """Sequential MAE over fixed-sample MAE at matched average sample size.

    The fixed sample size is n = N/p, so the comparison is restricted to
    probabilities where N/p is an integer (up to the knot snap tolerance);
    anything else raises.  Converges to asymptotic_ratio(N) as p -> 0.
    """
    N = validate_success_target(N)
    p = validate_probability(p)
    q = snap_nearest_int(N / p)
    if q != int(q):
        raise ValueError(
            f"N/p = {q!r} is not an integer; the matched-size comparison "
            "is defined only where the average sample size is integral"
        )
    sequential = exact_normalized_mae(N, p).normalized_mae
    fixed = fixed_normalized_mae(int(q), p).normalized_mae
    return sequential / fixed


def asymptotic_ratio(N: int) -> float:
    """Small-p limit e * (1 + 1/(N-1))**(-(N-1)) of the MAE ratio.

    Strictly greater than 1 and decreasing toward 1 as N grows.
    """
    N = validate_success_target(N)
    return math.exp(1.0 - (N - 1) * math.log1p(1.0 / (N - 1)))
