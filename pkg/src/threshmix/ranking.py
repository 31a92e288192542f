"""AUC-ROC, ROC curve data, and the regret representation of AUC."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .dataset import MID, LabeledScores, empirical_cdfs
from .errors import DegenerateClassError


def _require_both_classes(d: LabeledScores, what: str) -> None:
    if d.n_pos == 0 or d.n_neg == 0:
        raise DegenerateClassError(f"{what} needs both classes present")


def auc_roc(d: LabeledScores) -> float:
    """Probability a random positive outscores a random negative (ties: half credit).

    Rank-sum formulation; equal to brute-force counting over all
    positive x negative pairs.
    """
    _require_both_classes(d, "AUC-ROC")
    ranks = rankdata(d.scores, method="average")
    rank_sum = ranks[d.labels == 1].sum()
    n_pos, n_neg = d.n_pos, d.n_neg
    return float((rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


@dataclass(frozen=True)
class RocCurve:
    """ROC staircase over distinct thresholds, from (0, 0) to (1, 1)."""

    fpr: np.ndarray
    tpr: np.ndarray
    auc: float

    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def roc_curve(d: LabeledScores) -> RocCurve:
    """Sweep thresholds over the distinct scores, highest first.

    The trapezoidal area equals :func:`auc_roc` exactly (tie groups
    contribute half credit through the slanted segments).
    """
    _require_both_classes(d, "ROC curve")
    order = np.argsort(d.scores)[::-1]
    scores = d.scores[order]
    labels = d.labels[order]
    # one step per distinct score, counting the whole tie group at once
    group_last = np.append(np.nonzero(np.diff(scores))[0], scores.size - 1)
    tp_cum = np.cumsum(labels)
    fp_cum = np.cumsum(1 - labels)
    tpr = np.concatenate(([0.0], tp_cum[group_last] / d.n_pos))
    fpr = np.concatenate(([0.0], fp_cum[group_last] / d.n_neg))
    area = float(np.trapezoid(tpr, fpr))
    return RocCurve(fpr=fpr, tpr=tpr, auc=area)


def mean_regret_at_scores(d: LabeledScores) -> float:
    """E[R(s(x))] over the pooled data, with mid-distribution CDFs."""
    _require_both_classes(d, "score-distributed regret")
    cdfs = empirical_cdfs(d, convention=MID)
    t = cdfs.breakpoints
    pi = d.prevalence
    r_star = t * (1.0 - pi) * (1.0 - cdfs.f0_cum) + (1.0 - t) * pi * cdfs.f1_cum
    # weight each distinct score by its multiplicity in the pooled sample
    counts = np.searchsorted(d.scores_sorted, t, side="right") - np.searchsorted(
        d.scores_sorted, t, side="left"
    )
    return float(np.sum(r_star * counts) / d.n)


def hand_identity_gap(d: LabeledScores) -> float:
    """auc_roc minus its regret representation 1 - E[R(s)] / (2 pi (1 - pi)).

    Near zero only when the forecasts are calibrated; the gap itself is a
    diagnostic, positive when scores rank better than they forecast.
    """
    _require_both_classes(d, "the AUC regret representation")
    pi = d.prevalence
    rhs = 1.0 - mean_regret_at_scores(d) / (2.0 * pi * (1.0 - pi))
    return auc_roc(d) - rhs
