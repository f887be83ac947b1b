"""Reproducible Monte-Carlo machinery for inverse binomial sampling.

Sampling runs a Bernoulli(p) stream until the N-th success; a draw succeeds
when a uniform double in [0, 1) falls below p.  Shard k of a run owns the
counter-based stream Philox(key=seed) jumped k times, and jumps advance the
counter by 2**128 draws, so shard streams provably never overlap.  Shards
are merged in index order with fixed-size batches, making results for a
given (seed, shards, trials) configuration bit-identical across runs; the
same seed with a different shard count gives statistically compatible but
not bit-identical estimates.

Moments are accumulated in one pass (Welford-style with batch merging), so
runs with 1e8 trials never hold their samples.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .distributions import (
    nbin_pmf,
    nbin_sf,
    validate_probability,
    validate_success_target,
    validate_trial_count,
)

__all__ = [
    "RunConfig",
    "McEstimate",
    "RunningMoments",
    "run_inverse_binomial",
    "estimate_p",
    "mc_normalized_mae",
    "brute_force_normalized_mae",
]

# Trials simulated per batch and the uniform-draw budget per block iteration
# are fixed constants: the draw pattern, and therefore the output, must be a
# pure function of (seed, shards, trials), never of machine load.
_BATCH_TRIALS = 1 << 15
_DRAW_BUDGET = 1 << 22


@dataclass(frozen=True)
class RunConfig:
    """Inputs that fully determine a Monte-Carlo estimate."""

    N: int
    p: float
    trials: int
    seed: int
    shards: int = 1

    def __post_init__(self) -> None:
        validate_success_target(self.N)
        validate_probability(self.p)
        if operator.index(self.trials) < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if operator.index(self.shards) < 1:
            raise ValueError(f"shards must be >= 1, got {self.shards}")
        seed = operator.index(self.seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo estimate of the normalized MAE with its companions.

    std_error fields are sample standard deviations divided by
    sqrt(trials); mean_sample_size estimates the average trial count N/p.
    """

    mean_normalized_abs_error: float
    std_error: float
    trials: int
    mean_sample_size: float
    mean_estimate: float
    std_error_estimate: float
    std_error_sample_size: float


class RunningMoments:
    """Single-pass count/mean/M2 accumulator with an order-fixed merge."""

    __slots__ = ("count", "mean", "m2")

    def __init__(self) -> None:
        self.count = 0
        self.mean = 0.0
        self.m2 = 0.0

    def add(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (x - self.mean)

    def add_batch(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            return
        batch_mean = float(values.mean())
        batch_m2 = float(np.square(values - batch_mean).sum())
        self._combine(values.size, batch_mean, batch_m2)

    def merge(self, other: "RunningMoments") -> None:
        self._combine(other.count, other.mean, other.m2)

    def _combine(self, count: int, mean: float, m2: float) -> None:
        if count == 0:
            return
        total = self.count + count
        delta = mean - self.mean
        self.mean += delta * (count / total)
        self.m2 += m2 + delta * delta * (self.count * count / total)
        self.count = total

    @property
    def variance(self) -> float:
        """Unbiased sample variance; 0 before two samples exist."""
        if self.count < 2:
            return 0.0
        return self.m2 / (self.count - 1)

    @property
    def std_error(self) -> float:
        if self.count == 0:
            return 0.0
        return math.sqrt(self.variance / self.count)


def _trial_cap(N: int, p: float) -> int:
    # Termination is almost sure; only a broken generator ever gets here.
    return math.ceil(1e9 * N / p)


def run_inverse_binomial(N: int, p: float, rng: np.random.Generator) -> int:
    """Observe Bernoulli(p) draws from rng until the N-th success.

    Returns the index of the trial carrying that success; consumes exactly
    that many uniforms from the generator.
    """
    N = validate_success_target(N)
    p = validate_probability(p)
    cap = _trial_cap(N, p)
    successes = 0
    trials = 0
    while successes < N:
        if trials >= cap:
            raise RuntimeError(
                f"no {N}-th success within {cap} trials; the generator looks broken"
            )
        trials += 1
        if rng.random() < p:
            successes += 1
    return trials


def estimate_p(N: int, n: int) -> float:
    """Unbiased estimate (N-1)/(n-1) of p from the stopping trial n."""
    N = validate_success_target(N)
    n = validate_trial_count(n, N)
    return (N - 1) / (n - 1)


def _sample_trial_counts(
    rng: np.random.Generator, N: int, p: float, size: int, cap: int
) -> np.ndarray:
    """Stopping trials of `size` independent runs, drawn block-wise.

    Rows map to runs; each block iteration tests a rectangle of uniforms
    against p and retires the rows whose success count reaches N.  Block
    widths depend only on (N, p, size), keeping the draw pattern, and hence
    the result, deterministic for a given generator state.
    """
    counts = np.empty(size, dtype=np.int64)
    pending = np.arange(size)
    successes = np.zeros(size, dtype=np.int64)
    consumed = 0
    width = int(1.5 * N / p) + 8
    while pending.size:
        cols = min(width, max(16, _DRAW_BUDGET // pending.size))
        hits = rng.random((pending.size, cols)) < p
        cum = successes[:, None] + np.cumsum(hits, axis=1, dtype=np.int64)
        reached = cum >= N
        done = reached[:, -1]
        first = np.argmax(reached, axis=1)
        counts[pending[done]] = consumed + first[done] + 1
        keep = ~done
        pending = pending[keep]
        successes = cum[keep, -1]
        consumed += cols
        if pending.size and consumed >= cap:
            raise RuntimeError(
                f"runs still unfinished after {consumed} trials; the generator looks broken"
            )
    return counts


def mc_normalized_mae(cfg: RunConfig) -> McEstimate:
    """Empirical normalized MAE over cfg.trials independent runs.

    Tracks |p_hat - p|/p, p_hat itself, and the sample size n in one pass.
    Work splits across cfg.shards independent generator streams (extra
    trials go to the lowest shard indices) and merges in shard order.
    """
    err = RunningMoments()
    est = RunningMoments()
    nobs = RunningMoments()
    cap = _trial_cap(cfg.N, cfg.p)
    base, extra = divmod(cfg.trials, cfg.shards)
    for shard in range(cfg.shards):
        quota = base + (1 if shard < extra else 0)
        if quota == 0:
            continue
        rng = np.random.Generator(np.random.Philox(key=cfg.seed).jumped(shard))
        remaining = quota
        while remaining:
            batch = min(_BATCH_TRIALS, remaining)
            counts = _sample_trial_counts(rng, cfg.N, cfg.p, batch, cap)
            p_hat = (cfg.N - 1.0) / (counts - 1.0)
            err.add_batch(np.abs(p_hat - cfg.p) / cfg.p)
            est.add_batch(p_hat)
            nobs.add_batch(counts)
            remaining -= batch
    return McEstimate(
        mean_normalized_abs_error=err.mean,
        std_error=err.std_error,
        trials=cfg.trials,
        mean_sample_size=nobs.mean,
        mean_estimate=est.mean,
        std_error_estimate=est.std_error,
        std_error_sample_size=nobs.std_error,
    )


def brute_force_normalized_mae(N: int, p: float, tail_epsilon: float) -> float:
    """Truncated direct expectation of |p_hat - p|/p over the trial count.

    Independent oracle for the closed form: sums f_N(n) * |(N-1)/(n-1) - p|/p
    term by term from n = N up to a cutoff beyond which the neglected tail
    contributes less than tail_epsilon.  Past the cutoff the integrand is at
    most max(p, 1), so the tail is bounded by max(p, 1) * (1 - F_N(n_max))/p;
    the cutoff is found by doubling.
    """
    N = validate_success_target(N)
    p = validate_probability(p)
    tail_epsilon = float(tail_epsilon)
    if not 0.0 < tail_epsilon <= 1e-6:
        raise ValueError(f"tail_epsilon must lie in (0, 1e-6], got {tail_epsilon!r}")
    n_max = max(2 * N, math.ceil(2 * N / p))
    while max(p, 1.0) * nbin_sf(N, p, n_max) / p >= tail_epsilon:
        n_max *= 2
    return math.fsum(
        nbin_pmf(N, p, n) * abs((N - 1) / (n - 1) - p) / p
        for n in range(N, n_max + 1)
    )
