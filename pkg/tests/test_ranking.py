"""AUC-ROC pair counting, ROC staircases, and the regret representation."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threshmix import (
    DegenerateClassError,
    auc_roc,
    from_pairs,
    hand_identity_gap,
    roc_curve,
)

from conftest import brute_force_auc, calibrated_grouped, two_class_dataset


class TestAucRoc:
    def test_perfect_separation(self):
        d = from_pairs([(0, 0.1), (0, 0.2), (1, 0.8), (1, 0.9)])
        assert auc_roc(d) == 1.0

    def test_all_ties_half(self):
        d = from_pairs([(0, 0.5), (1, 0.5), (0, 0.5), (1, 0.5)])
        assert auc_roc(d) == 0.5

    def test_treat_all_archetype(self):
        d = from_pairs([(1, 1.0)] * 2 + [(0, 1.0)] * 8)
        assert auc_roc(d) == 0.5

    def test_degenerate_class(self):
        with pytest.raises(DegenerateClassError):
            auc_roc(from_pairs([(1, 0.5), (1, 0.9)]))

    def test_matches_brute_force_exactly(self, rng):
        for n in range(2, 31):
            labels = rng.integers(0, 2, n)
            if labels.sum() in (0, n):
                labels[0] = 1 - labels[0]
            scores = np.round(rng.random(n), 1)
            d = from_pairs(list(zip(labels.tolist(), scores.tolist())))
            assert auc_roc(d) == brute_force_auc(d)

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(0, 1), min_size=2, max_size=25).filter(
            lambda ls: 0 < sum(ls) < len(ls)
        ),
        st.randoms(use_true_random=False),
    )
    def test_monotone_transform_invariance(self, labels, rnd):
        scores = [round(rnd.random(), 2) for _ in labels]
        d = from_pairs(list(zip(labels, scores)))
        # strictly increasing maps of [0, 1] onto itself
        transforms = (lambda s: s * s, lambda s: s / (2.0 - s), lambda s: 0.5 + s / 2)
        base = auc_roc(d)
        for f in transforms:
            mapped = from_pairs([(y, f(s)) for y, s in zip(labels, scores)])
            assert auc_roc(mapped) == pytest.approx(base, abs=1e-12)


class TestRocCurve:
    def test_perfect_separation_staircase(self):
        d = from_pairs([(0, 0.2), (1, 0.8)])
        rc = roc_curve(d)
        assert rc.points() == [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
        assert rc.auc == 1.0

    def test_single_pair(self):
        d = from_pairs([(1, 0.6), (0, 0.4)])
        assert roc_curve(d).auc == 1.0

    def test_tie_diagonal(self):
        d = from_pairs([(0, 0.5), (1, 0.5)])
        rc = roc_curve(d)
        assert rc.points() == [(0.0, 0.0), (1.0, 1.0)]
        assert rc.auc == 0.5

    def test_monotone_from_origin_to_corner(self, rng):
        for _ in range(25):
            d = two_class_dataset(rng)
            rc = roc_curve(d)
            assert rc.fpr[0] == 0.0 and rc.tpr[0] == 0.0
            assert rc.fpr[-1] == 1.0 and rc.tpr[-1] == 1.0
            assert np.all(np.diff(rc.fpr) >= 0)
            assert np.all(np.diff(rc.tpr) >= 0)

    def test_trapezoid_equals_pair_count(self, rng):
        for _ in range(50):
            d = two_class_dataset(rng)
            rc = roc_curve(d)
            assert abs(rc.auc - auc_roc(d)) <= 1e-12

    def test_degenerate_class(self):
        with pytest.raises(DegenerateClassError):
            roc_curve(from_pairs([(0, 0.5)]))


class TestHandIdentityGap:
    def test_exactly_calibrated_groups_exact(self):
        d = calibrated_grouped([0.2, 0.8], [5, 5])
        assert auc_roc(d) == pytest.approx(0.8)
        assert hand_identity_gap(d) == pytest.approx(0.0, abs=1e-12)

    def test_second_grouped_example(self):
        d = calibrated_grouped([0.2, 0.4], [5, 5])
        assert hand_identity_gap(d) == pytest.approx(0.0, abs=1e-12)

    def test_all_half_scores(self):
        d = from_pairs([(1, 0.5), (0, 0.5)])
        # AUC = 0.5 by half credit; R(0.5) = 0.25 under the mid convention
        assert hand_identity_gap(d) == pytest.approx(0.0, abs=1e-15)

    def test_anticalibrated_large_gap(self):
        d = calibrated_grouped([0.2, 0.8], [10, 10])
        flipped = from_pairs(
            [(y, 1.0 - s) for y, s in zip(d.labels.tolist(), d.scores.tolist())]
        )
        assert abs(hand_identity_gap(flipped)) > 0.25

    def test_gap_shrinks_with_n(self, rng):
        # groups whose rounded positive counts only approximately calibrate;
        # the rounding error, and hence the gap, scales like 1/n
        values = np.linspace(0.05, 0.95, 19)
        for n_per, tol in ((5, 0.05), (50, 0.005), (500, 5e-4)):
            d = calibrated_grouped(values, [n_per] * values.size)
            assert abs(hand_identity_gap(d)) <= tol

    def test_degenerate_class(self):
        with pytest.raises(DegenerateClassError):
            hand_identity_gap(from_pairs([(1, 0.5)]))
