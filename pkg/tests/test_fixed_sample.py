import math

import pytest

from ibsmae.distributions import binom_pmf
from ibsmae.fixed_sample import (
    asymptotic_ratio,
    fixed_normalized_mae,
    sequential_vs_fixed_ratio,
)
from ibsmae.mae import exact_normalized_mae


def binomial_expectation_oracle(n, p):
    # exhaustive sum over the n+1 outcomes of the proportion estimate
    return math.fsum(
        binom_pmf(n, p, k) * abs(k / n - p) / p for k in range(n + 1)
    )


class TestFixedNormalizedMae:
    def test_four_trials_at_half(self):
        result = fixed_normalized_mae(4, 0.5)
        assert result.normalized_mae == pytest.approx(0.375, rel=1e-13)
        assert result.N0 == 3

    def test_single_trial(self):
        # E|k - 0.5| = 0.5 exactly for one Bernoulli draw, so /p gives 1
        result = fixed_normalized_mae(1, 0.5)
        assert result.normalized_mae == pytest.approx(1.0, rel=1e-13)
        assert result.N0 == 1

    def test_ten_trials_against_oracle(self):
        got = fixed_normalized_mae(10, 0.3).normalized_mae
        assert got == pytest.approx(binomial_expectation_oracle(10, 0.3), rel=1e-12)

    def test_full_grid_against_oracle(self):
        for n in range(1, 101):
            for p in [i / 20 for i in range(1, 20)]:
                got = fixed_normalized_mae(n, p).normalized_mae
                want = binomial_expectation_oracle(n, p)
                assert abs(got - want) / want < 1e-10, (n, p)

    def test_threshold_knot_points(self):
        # p = j/n makes n*p integral; N0 must be j+1 however the product rounds
        for n in range(2, 60):
            for j in range(1, n):
                assert fixed_normalized_mae(n, j / n).N0 == j + 1, (n, j)

    def test_threshold_near_one_stays_in_range(self):
        result = fixed_normalized_mae(5, 1 - 1e-12)
        assert 1 <= result.N0 <= 5

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            fixed_normalized_mae(0, 0.5)


class TestSequentialVsFixedRatio:
    def test_matched_quotient_at_half(self):
        # 0.5 / 0.375
        assert sequential_vs_fixed_ratio(2, 0.5) == pytest.approx(4 / 3, rel=1e-12)

    @pytest.mark.parametrize("N", range(2, 11))
    def test_small_p_converges_to_asymptote(self, N):
        ratio = sequential_vs_fixed_ratio(N, 1e-4)
        assert abs(ratio - asymptotic_ratio(N)) / asymptotic_ratio(N) < 0.01

    def test_always_above_one_on_matched_sizes(self):
        # inverse binomial sampling never beats the fixed design on the grid
        for N in range(2, 11):
            for m in range(N + 1, 80, 3):
                assert sequential_vs_fixed_ratio(N, N / m) > 1.0, (N, m)

    def test_consistency_with_components(self):
        want = (
            exact_normalized_mae(5, 0.2).normalized_mae
            / fixed_normalized_mae(25, 0.2).normalized_mae
        )
        assert sequential_vs_fixed_ratio(5, 0.2) == want

    def test_rejects_nonintegral_matched_size(self):
        with pytest.raises(ValueError):
            sequential_vs_fixed_ratio(2, 0.3)


class TestAsymptoticRatio:
    def test_two_successes(self):
        assert asymptotic_ratio(2) == pytest.approx(math.e / 2, rel=1e-13)

    def test_five_successes(self):
        assert asymptotic_ratio(5) == pytest.approx(math.e * 1.25**-4, rel=1e-13)

    def test_eleven_successes(self):
        assert asymptotic_ratio(11) == pytest.approx(1.0480153177406215, rel=1e-12)

    def test_decreases_toward_one(self):
        previous = asymptotic_ratio(2)
        for N in range(3, 300):
            current = asymptotic_ratio(N)
            assert 1.0 < current < previous
            previous = current
        assert asymptotic_ratio(10**6) == pytest.approx(1.0, abs=1e-5)
