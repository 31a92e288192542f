"""Proper scores, bounded variants, and their regret-mixture duality."""

from __future__ import annotations

import math

import numpy as np
import pytest

from threshmix import (
    IntervalAtBoundaryError,
    ThresholdInterval,
    bounded_brier,
    bounded_log_loss,
    brier,
    from_pairs,
    integrate_regret,
    log_loss,
    minimal_regret_curve,
    shift_score,
    shifted_brier,
    weighting_density,
)

from conftest import random_dataset, random_interior_interval


class TestBrier:
    def test_perfect(self):
        d = from_pairs([(1, 1.0), (0, 0.0)])
        assert brier(d) == 0.0

    def test_all_negative_forecast_equals_prevalence(self):
        d = from_pairs([(1, 0.0)] * 2 + [(0, 0.0)] * 8)
        assert brier(d) == pytest.approx(0.2, abs=1e-15)

    def test_single_half(self):
        assert brier(from_pairs([(1, 0.5)])) == 0.25


class TestLogLoss:
    def test_single_half(self):
        assert log_loss(from_pairs([(1, 0.5)])) == pytest.approx(math.log(2))

    def test_perfect_confident(self):
        d = from_pairs([(1, 1.0), (0, 0.0)])
        assert log_loss(d) == 0.0

    def test_certain_wrong_is_infinite(self):
        assert log_loss(from_pairs([(1, 0.0)])) == math.inf
        assert log_loss(from_pairs([(0, 1.0)])) == math.inf

    def test_clamp_makes_finite(self):
        d = from_pairs([(1, 0.0)])
        assert log_loss(d, clamp_epsilon=1e-6) == pytest.approx(-math.log(1e-6))


class TestBoundedBrier:
    def test_full_interval_is_brier_exactly(self, rng):
        for _ in range(20):
            d = random_dataset(rng)
            assert bounded_brier(d, (0.0, 1.0)) == brier(d)

    def test_single_example_closed_form(self):
        d = from_pairs([(1, 0.5)])
        value = bounded_brier(d, (0.25, 0.75))
        assert value == pytest.approx(((1 - 0.5) ** 2 - (1 - 0.75) ** 2) / 0.5)
        assert value == pytest.approx(0.375)

    def test_appendix_all_negative(self):
        d = from_pairs([(1, 0.0)] * 2 + [(0, 0.0)] * 8)
        assert bounded_brier(d, (0.05, 0.2)) == pytest.approx(0.35, abs=1e-12)

    def test_row_permutation_invariant(self, rng):
        d = random_dataset(rng, n_max=30)
        perm = rng.permutation(d.n)
        d2 = from_pairs(list(zip(d.labels[perm].tolist(), d.scores[perm].tolist())))
        assert bounded_brier(d2, (0.1, 0.6)) == pytest.approx(
            bounded_brier(d, (0.1, 0.6)), abs=1e-15
        )


class TestBoundedLogLoss:
    def test_single_example_value(self):
        d = from_pairs([(1, 0.5)])
        expected = math.log(1.5) / (2 * math.log(3))
        assert bounded_log_loss(d, (0.25, 0.75)) == pytest.approx(expected, abs=1e-12)

    def test_perfect_forecasts_zero(self):
        d = from_pairs([(1, 1.0), (0, 0.0)])
        assert bounded_log_loss(d, (0.1, 0.9)) == pytest.approx(0.0, abs=1e-15)

    def test_boundary_interval_rejected(self):
        d = from_pairs([(1, 0.5)])
        with pytest.raises(IntervalAtBoundaryError):
            bounded_log_loss(d, (0.0, 0.5))
        with pytest.raises(IntervalAtBoundaryError):
            bounded_log_loss(d, (0.5, 1.0))

    def test_widening_limit_recovers_log_loss_integral(self):
        # W * bounded_log_loss -> log_loss as the interval fills (0, 1);
        # the normalized mean itself shrinks like log_loss / W.
        d = from_pairs([(1, 0.3), (0, 0.4), (1, 0.9), (0, 0.2)])
        target = log_loss(d)
        for eps in (1e-3, 1e-5, 1e-8):
            iv = ThresholdInterval(eps, 1 - eps)
            bracket = bounded_log_loss(d, iv) * iv.log_odds_width
            assert bracket == pytest.approx(target, rel=1e-6 + 10 * eps)

    def test_finite_even_with_certain_scores(self):
        d = from_pairs([(1, 0.0), (0, 1.0)])
        assert math.isfinite(bounded_log_loss(d, (0.2, 0.8)))


class TestDuality:
    """Clip closed forms equal the exact regret integrals (the central check)."""

    def test_bounded_brier_duality_suite(self, rng):
        for _ in range(200):
            d = random_dataset(rng, n_max=50)
            a, b = random_interior_interval(rng)
            curve = minimal_regret_curve(d)
            oracle = 2.0 * integrate_regret(curve, (a, b)) / (b - a)
            assert abs(bounded_brier(d, (a, b)) - oracle) <= 1e-9

    def test_bounded_log_loss_duality_suite(self, rng):
        for _ in range(200):
            d = random_dataset(rng, n_max=50)
            a, b = random_interior_interval(rng)
            iv = ThresholdInterval(a, b)
            curve = minimal_regret_curve(d)
            oracle = integrate_regret(curve, iv, "log-odds") / iv.log_odds_width
            assert abs(bounded_log_loss(d, iv) - oracle) <= 1e-9

    def test_nested_intervals_stay_equal(self, rng):
        d = random_dataset(rng, n_max=40)
        curve = minimal_regret_curve(d)
        inner = ThresholdInterval(0.3, 0.5)
        for pad in (0.0, 0.05, 0.15, 0.25):
            iv = ThresholdInterval(inner.a - pad, inner.b + pad)
            oracle = 2.0 * integrate_regret(curve, iv) / iv.width
            assert abs(bounded_brier(d, iv) - oracle) <= 1e-12


class TestPropriety:
    def test_truth_minimizes_expected_scores(self, rng):
        # labels resampled from known row probabilities; the truthful forecast
        # must win on average against a fixed perturbation
        n, resamples = 40, 1000
        p = rng.uniform(0.1, 0.9, n)
        q = np.clip(p + rng.choice([-0.1, 0.1], n), 0.02, 0.98)
        brier_gap = ll_gap = 0.0
        for _ in range(resamples):
            y = (rng.random(n) < p).astype(int)
            honest = from_pairs(list(zip(y.tolist(), p.tolist())))
            shifted = from_pairs(list(zip(y.tolist(), q.tolist())))
            brier_gap += brier(shifted) - brier(honest)
            ll_gap += log_loss(shifted) - log_loss(honest)
        assert brier_gap / resamples > 0
        assert ll_gap / resamples > 0


def shifted_brier_oracle(d, mu):
    """Substitution-weight route: per affine regret segment with
    u = pi*F1 and u + v = (1-pi)(1-F0), the Brier score of the recentered
    scores integrates d(g^2) against the FP mass and -d((1-g)^2) against
    the FN mass, g being the shift map."""
    curve = minimal_regret_curve(d)
    total = 0.0
    for i in range(curve.n_segments):
        lo, hi = curve.breakpoints[i], curve.breakpoints[i + 1]
        u, v = curve.intercepts[i], curve.slopes[i]
        g_lo, g_hi = shift_score(lo, mu), shift_score(hi, mu)
        total += (u + v) * (g_hi**2 - g_lo**2)
        total += u * ((1 - g_lo) ** 2 - (1 - g_hi) ** 2)
    return total


class TestShiftedBrier:
    def test_midpoint_reference_is_identity(self, rng):
        for _ in range(10):
            d = random_dataset(rng)
            assert shifted_brier(d, 0.5) == pytest.approx(brier(d), abs=1e-15)

    def test_shift_round_trip(self):
        s = np.arange(0.1, 0.95, 0.1)
        for mu in (0.1, 0.25, 0.6, 0.9):
            back = shift_score(shift_score(s, mu), 1.0 - mu)
            np.testing.assert_allclose(back, s, atol=1e-12)

    def test_boundary_extension(self):
        assert shift_score(0.0, 0.3) == 0.0
        assert shift_score(1.0, 0.3) == 1.0

    def test_single_example_pinned_by_oracle(self):
        d = from_pairs([(1, 0.5)])
        assert shift_score(0.5, 0.25) == pytest.approx(0.75)
        assert shifted_brier(d, 0.25) == pytest.approx((1 - 0.75) ** 2)
        assert shifted_brier(d, 0.25) == pytest.approx(shifted_brier_oracle(d, 0.25), abs=1e-12)

    def test_matches_substitution_weight_oracle(self, rng):
        for _ in range(40):
            d = random_dataset(rng)
            mu = float(rng.uniform(0.05, 0.95))
            assert shifted_brier(d, mu) == pytest.approx(
                shifted_brier_oracle(d, mu), abs=1e-12
            )


class TestWeightingDensity:
    def test_brier_flat_on_cost_axis(self):
        dc = weighting_density("brier", "cost-ratio")
        assert np.allclose(dc.density, 1.0)

    def test_brier_on_log_odds_axis(self):
        dc = weighting_density("brier", "log-odds")
        c = 1 / (1 + np.exp(-dc.x))
        np.testing.assert_allclose(dc.density, c * (1 - c), atol=1e-12)
        assert dc.x[np.argmax(dc.density)] == pytest.approx(0.0, abs=1e-9)

    def test_logloss_weight_shape(self):
        dc = weighting_density("logloss", "cost-ratio")
        np.testing.assert_allclose(dc.density, 1 / (dc.x * (1 - dc.x)), atol=1e-9)
        assert not dc.normalized
        flat = weighting_density("logloss", "log-odds")
        assert np.allclose(flat.density, 1.0)

    def test_beta_mode(self):
        dc = weighting_density("beta", "cost-ratio", alpha=2, beta=8, points=4001)
        mode = dc.x[np.argmax(dc.density)]
        assert mode == pytest.approx(1 / 8, abs=1e-3)

    def test_accuracy_point_mass(self):
        dc = weighting_density("accuracy-point", "cost-ratio")
        assert dc.point_mass == 0.5
        assert dc.x.size == 0
        assert weighting_density("accuracy-point", "log-odds").point_mass == 0.0
