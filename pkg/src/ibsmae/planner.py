"""Choose the minimal success target N meeting a prescribed error level.

The guarantees hold irrespective of the unknown probability p: the MAE plan
uses the uniform bound alpha(N) on the normalized MAE, the RMSE plan the
bound 1/sqrt(N-2) on the normalized root mean square error (valid for
N >= 3).  Both bounds decrease strictly in N, so the minimal N is well
defined; plans guarantee the bound, not the exact error, which depends on
p and sits strictly below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mae import alpha
from .numeric_core import snap_nearest_int

__all__ = ["PlanResult", "plan_mae", "plan_rmse"]


@dataclass(frozen=True)
class PlanResult:
    """Minimal success target meeting a normalized-error target."""

    N: int
    achieved_bound: float
    target: float
    criterion: str


def plan_mae(target: float) -> PlanResult:
    """Smallest N >= 2 whose normalized-MAE bound alpha(N) is <= target.

    Targets at or above alpha(2) = 2/e are met already by N = 2.  Below
    that, an exponential bracket followed by bisection exploits that alpha
    decreases strictly in N.
    """
    target = float(target)
    if not 0.0 < target < 1.0:
        raise ValueError(f"MAE target must lie in (0, 1), got {target!r}")
    if alpha(2) <= target:
        return PlanResult(2, alpha(2), target, "mae")
    lo, hi = 2, 4
    while alpha(hi) > target:
        lo, hi = hi, 2 * hi
    # invariant: alpha(lo) > target >= alpha(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if alpha(mid) > target:
            lo = mid
        else:
            hi = mid
    return PlanResult(hi, alpha(hi), target, "mae")


def plan_rmse(target: float) -> PlanResult:
    """Smallest N >= 3 with normalized-RMSE bound 1/sqrt(N-2) <= target.

    Closed form N = 2 + ceil(1/target**2), with the knot snap applied to
    1/target**2 so that targets hitting the bound exactly (e.g. 0.1) do not
    overshoot by one.  A target of 1 is met at N = 3, where the bound first
    applies; larger targets are rejected along with the rest of (1, inf).
    """
    target = float(target)
    if not 0.0 < target <= 1.0:
        raise ValueError(f"RMSE target must lie in (0, 1], got {target!r}")
    N = 2 + math.ceil(snap_nearest_int(1.0 / (target * target)))
    return PlanResult(N, 1.0 / math.sqrt(N - 2), target, "rmse")
