"""Isotonic recalibration (PAV) and calibration/refinement decompositions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledScores
from .scoring import _pointwise_log_loss, brier, log_loss


@dataclass(frozen=True)
class IsotonicBlock:
    """A pooled PAV block: the scores it spans and their common fitted value."""

    score_lo: float
    score_hi: float
    value: float
    count: int


@dataclass(frozen=True)
class IsotonicFit:
    """Least-squares isotonic regression of labels on score order.

    ``fitted`` is aligned with the canonical (nondecreasing score) order of
    the dataset.  Rows with identical scores are pooled before PAV, so the
    fit is a function of the score value.
    """

    blocks: tuple[IsotonicBlock, ...]
    fitted: np.ndarray
    distinct_scores: np.ndarray
    fitted_by_score: np.ndarray

    def __post_init__(self):
        for name in ("fitted", "distinct_scores", "fitted_by_score"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def predict(self, scores) -> np.ndarray:
        """Fitted value for scores seen at fit time (exact step lookup)."""
        scores = np.asarray(scores, dtype=float)
        idx = np.searchsorted(self.distinct_scores, scores)
        idx = np.clip(idx, 0, self.distinct_scores.size - 1)
        return self.fitted_by_score[idx]


def _pav(values: np.ndarray, weights: np.ndarray) -> list[list[float]]:
    """Weighted pool-adjacent-violators.

    Returns the merged blocks as [weighted sum, weight, length] triples;
    blocks merge only on an actual order violation, so an already-isotonic
    input keeps every point as its own block.
    """
    sums: list[list[float]] = []
    for value, weight in zip(values, weights):
        sums.append([value * weight, weight, 1])
        # merge while the previous block mean exceeds the new one
        while len(sums) > 1 and sums[-2][0] * sums[-1][1] > sums[-1][0] * sums[-2][1]:
            s, w, k = sums.pop()
            sums[-1][0] += s
            sums[-1][1] += w
            sums[-1][2] += k
    return sums


def pav_fit(d: LabeledScores) -> IsotonicFit:
    """Isotonic regression of the labels in score order.

    Idempotent: feeding the fitted values back in (same labels) returns the
    same fit, and the per-row residuals sum to zero.
    """
    scores = d.scores_sorted
    labels = d.labels_sorted.astype(float)
    distinct, start = np.unique(scores, return_index=True)
    counts = np.diff(np.append(start, scores.size))
    label_cum = np.concatenate(([0.0], np.cumsum(labels)))
    pooled_mean = (label_cum[start + counts] - label_cum[start]) / counts

    pav_blocks = _pav(pooled_mean, counts.astype(float))

    fitted_by_score = np.empty(distinct.size, dtype=float)
    blocks: list[IsotonicBlock] = []
    i = 0
    for weighted_sum, weight, length in pav_blocks:
        value = weighted_sum / weight
        fitted_by_score[i : i + length] = value
        blocks.append(
            IsotonicBlock(
                score_lo=float(distinct[i]),
                score_hi=float(distinct[i + length - 1]),
                value=float(value),
                count=int(counts[i : i + length].sum()),
            )
        )
        i += length
    fitted = np.repeat(fitted_by_score, counts)

    return IsotonicFit(
        blocks=tuple(blocks),
        fitted=fitted,
        distinct_scores=distinct,
        fitted_by_score=fitted_by_score,
    )


@dataclass(frozen=True)
class DecompositionReport:
    """A proper score split into calibration and refinement components.

    The score-difference form is additively exact by construction:
    ``calibration_term + refinement_term == total``.  The divergence form
    (squared score gap or KL) matches ``calibration_term`` only when every
    PAV block spans a single distinct score; ``cross_residual`` records the
    difference so it stays visible.
    """

    metric: str
    total: float
    calibration_term: float
    refinement_term: float
    divergence_term: float
    cross_residual: float


def brier_decomposition(d: LabeledScores) -> DecompositionReport:
    """Split the Brier score against an isotonic recalibration on the same data."""
    fit = pav_fit(d)
    y = d.labels_sorted.astype(float)
    s = d.scores_sorted
    p = fit.fitted

    total = brier(d)
    refinement = float(np.mean((p - y) ** 2))
    divergence = float(np.mean((s - p) ** 2))
    return DecompositionReport(
        metric="brier",
        total=total,
        calibration_term=total - refinement,
        refinement_term=refinement,
        divergence_term=divergence,
        cross_residual=total - divergence - refinement,
    )


def _kl_terms(p: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Pointwise KL(p || s) with the conventions 0 log 0 = 0, x/0 = inf for x>0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        pos = np.where(p > 0.0, p * (np.log(p) - np.log(s)), 0.0)
        neg = np.where(p < 1.0, (1.0 - p) * (np.log1p(-p) - np.log1p(-s)), 0.0)
    return pos + neg


def log_loss_decomposition(d: LabeledScores) -> DecompositionReport:
    """Split the log loss into a KL term and the recalibrated cross entropy.

    Rows with a score of exactly 0 or 1 inside a block with interior pooled
    value make the total and the KL term infinite; infinities propagate as
    values rather than raising.
    """
    fit = pav_fit(d)
    y = d.labels_sorted
    s = d.scores_sorted
    p = fit.fitted

    total = log_loss(d)
    refinement = float(np.mean(_pointwise_log_loss(p, y)))
    divergence = float(np.mean(_kl_terms(p, s)))
    return DecompositionReport(
        metric="log-loss",
        total=total,
        calibration_term=total - refinement,
        refinement_term=refinement,
        divergence_term=divergence,
        cross_residual=total - divergence - refinement,
    )
