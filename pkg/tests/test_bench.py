"""Synthetic cohort, archetype forecasts, and the benchmark table."""

from __future__ import annotations

import io

import numpy as np
import pytest

from threshmix import brier, hand_identity_gap, net_benefit
from threshmix.bench import (
    ArchetypeSpec,
    all_positive_rank_differs,
    apply_archetype,
    benchmark_table,
    default_archetypes,
    generate_cohort,
    orderings_agree_except_all_positive,
)


class TestGenerateCohort:
    def test_prevalence_law_of_large_numbers(self):
        cohort = generate_cohort(100_000, prevalence=0.2, seed=0)
        assert abs(cohort.empirical_prevalence - 0.2) <= 0.005

    def test_deterministic_given_seed(self):
        a = generate_cohort(1000, seed=42)
        b = generate_cohort(1000, seed=42)
        np.testing.assert_array_equal(a.risks, b.risks)
        np.testing.assert_array_equal(a.labels, b.labels)

    def test_seeds_differ(self):
        a = generate_cohort(1000, seed=1)
        b = generate_cohort(1000, seed=2)
        assert not np.array_equal(a.risks, b.risks)

    def test_mean_risk_tracks_prevalence(self):
        for prev in (0.1, 0.2, 0.4):
            cohort = generate_cohort(200_000, prevalence=prev, seed=3)
            assert cohort.risks.mean() == pytest.approx(prev, abs=0.01)

    def test_unsupported_prevalence(self):
        with pytest.raises(ValueError):
            generate_cohort(100, prevalence=0.001)

    def test_labels_are_conditionally_plausible(self):
        cohort = generate_cohort(200_000, seed=5)
        pooled = cohort.labels[cohort.risks == 0.03].mean()
        assert pooled == pytest.approx(0.03, abs=0.005)


class TestApplyArchetype:
    def test_assume_all_negative_brier_is_prevalence(self):
        cohort = generate_cohort(50_000, seed=0)
        d = apply_archetype(cohort, ArchetypeSpec("assume-all-negative"))
        assert brier(d) == pytest.approx(cohort.empirical_prevalence, abs=1e-12)

    def test_assume_all_positive_brier(self):
        cohort = generate_cohort(50_000, seed=0)
        d = apply_archetype(cohort, ArchetypeSpec("assume-all-positive"))
        assert brier(d) == pytest.approx(1 - cohort.empirical_prevalence, abs=1e-12)

    def test_well_calibrated_small_hand_gap(self):
        cohort = generate_cohort(50_000, seed=0)
        d = apply_archetype(cohort, ArchetypeSpec("well-calibrated"))
        assert abs(hand_identity_gap(d)) <= 0.01

    def test_shifts_move_scores_the_right_way(self):
        cohort = generate_cohort(1000, seed=0)
        under = apply_archetype(cohort, ArchetypeSpec("underestimating", -1.9))
        over = apply_archetype(cohort, ArchetypeSpec("overestimating", +0.95))
        assert np.all(under.scores <= cohort.risks + 1e-12)
        assert np.all(over.scores >= cohort.risks - 1e-12)

    def test_binary_archetypes_emit_zero_one(self):
        cohort = generate_cohort(1000, seed=0)
        for name in ("highly-sensitive", "highly-specific"):
            spec = next(s for s in default_archetypes() if s.name == name)
            d = apply_archetype(cohort, spec)
            assert set(np.unique(d.scores)) <= {0.0, 1.0}

    def test_sensitive_more_sensitive_than_specific(self):
        cohort = generate_cohort(50_000, seed=0)
        specs = {s.name: s for s in default_archetypes()}
        pos = cohort.labels == 1
        sens_hs = apply_archetype(cohort, specs["highly-sensitive"]).scores[pos].mean()
        sens_hsp = apply_archetype(cohort, specs["highly-specific"]).scores[pos].mean()
        assert sens_hs > sens_hsp + 0.2

    def test_unknown_archetype(self):
        with pytest.raises(ValueError):
            ArchetypeSpec("flips-a-coin")


class TestBenchmarkTable:
    def test_analytic_cells_default_run(self):
        table = benchmark_table()
        pi = table.empirical_prevalence
        aan = table.row("assume-all-negative")
        assert aan.brier == pytest.approx(pi, abs=1e-12)
        assert aan.nb == pytest.approx((0.0, 0.0, 0.0), abs=1e-15)
        assert aan.brier == pytest.approx(0.20, abs=0.005)
        assert aan.bounded_brier == pytest.approx(0.35, abs=0.005)
        aap = table.row("assume-all-positive")
        assert aap.brier == pytest.approx(1 - pi, abs=1e-12)
        assert aap.nb[0] == pytest.approx(pi - (1 - pi) / 19, abs=1e-12)
        assert aap.nb[0] == pytest.approx(0.158, abs=0.005)
        assert aap.nb[1] == pytest.approx(0.111, abs=0.005)
        assert aap.nb[2] == pytest.approx(0.0, abs=0.005)
        assert aap.bounded_brier == pytest.approx(0.20, abs=0.005)

    def test_analytic_identities_hold_for_any_seed_and_size(self):
        for n, seed in ((100, 7), (2000, 11)):
            table = benchmark_table(n=n, seed=seed)
            pi = table.empirical_prevalence
            aan = table.row("assume-all-negative")
            aap = table.row("assume-all-positive")
            assert aan.brier == pytest.approx(pi, abs=1e-12)
            assert aan.nb == pytest.approx((0.0, 0.0, 0.0), abs=1e-15)
            assert aap.brier == pytest.approx(1 - pi, abs=1e-12)
            for tau, value in zip((0.05, 0.10, 0.20), aap.nb):
                assert value == pytest.approx(pi - (1 - pi) * tau / (1 - tau), abs=1e-12)
            # bounded brier of treat-none: pi * 2 * mean(1 - c) over [a, b]
            a, b = table.interval
            assert aan.bounded_brier == pytest.approx(
                pi * 2 * (1 - (a + b) / 2), abs=1e-12
            )

    def test_rows_sorted_by_nb5(self):
        table = benchmark_table(n=10_000, seed=0)
        nb5 = [r.nb[0] for r in table.rows]
        assert nb5 == sorted(nb5, reverse=True)

    def test_well_calibrated_auc_in_band(self):
        table = benchmark_table()
        assert 0.73 <= table.row("well-calibrated").auc <= 0.77

    def test_ordering_agreement_ten_seeds(self):
        for seed in range(10):
            table = benchmark_table(n=10_000, seed=seed)
            assert orderings_agree_except_all_positive(table), f"seed {seed}"

    def test_all_positive_exception_at_scale(self):
        table = benchmark_table(n=1_000_000, seed=0)
        assert orderings_agree_except_all_positive(table)
        assert all_positive_rank_differs(table)

    def test_seed_changes_sampled_cells_only(self):
        t1 = benchmark_table(n=5000, seed=1)
        t2 = benchmark_table(n=5000, seed=2)
        pi1, pi2 = t1.empirical_prevalence, t2.empirical_prevalence
        assert t1.row("assume-all-negative").brier == pytest.approx(pi1, abs=1e-12)
        assert t2.row("assume-all-negative").brier == pytest.approx(pi2, abs=1e-12)
        assert t1.row("well-calibrated").brier != t2.row("well-calibrated").brier

    def test_net_benefit_columns_match_module(self):
        table = benchmark_table(n=2000, seed=3)
        cohort = generate_cohort(2000, seed=3)
        spec = next(s for s in default_archetypes() if s.name == "well-calibrated")
        d = apply_archetype(cohort, spec)
        row = table.row("well-calibrated")
        for tau, value in zip((0.05, 0.10, 0.20), row.nb):
            assert value == pytest.approx(net_benefit(d, tau), abs=1e-15)

    def test_csv_emission(self):
        table = benchmark_table(n=1000, seed=0)
        text = table.to_csv()
        lines = text.splitlines()
        assert lines[0].startswith("archetype,auc,brier")
        assert len(lines) == 9
        buf = io.StringIO()
        table.to_csv(buf)
        assert buf.getvalue() == text

    def test_text_emission(self):
        table = benchmark_table(n=1000, seed=0)
        text = table.to_text()
        assert "well-calibrated" in text
        assert "Brier[5,20]" in text
