"""Decision Curve Analysis: net benefit, its bounded average, and rescalings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledScores
from .errors import ThresholdAtBoundaryError
from .interval import as_interval
from .regret import (
    LOG_ODDS,
    ONE_OVER_ONE_MINUS_C,
    UNIFORM,
    integrate_regret,
    minimal_regret_curve,
)

QUADRATIC = "quadratic"
LOGARITHMIC = "logarithmic"


def _benefit_counts(d: LabeledScores, taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """True/false positive counts at each threshold under the >= rule."""
    pos = np.sort(d.scores[d.labels == 1])
    neg = np.sort(d.scores[d.labels == 0])
    tp = pos.size - np.searchsorted(pos, taus, side="left")
    fp = neg.size - np.searchsorted(neg, taus, side="left")
    return tp, fp


def net_benefit(d: LabeledScores, tau: float) -> float:
    """Net benefit at threshold tau: TP/n - FP/n * tau/(1-tau).

    Related to minimal regret by NB(c) = prevalence - R(c)/(1-c), so it is
    bounded above by the prevalence.
    """
    if not 0.0 < tau < 1.0:
        raise ThresholdAtBoundaryError(
            f"net benefit is defined for thresholds strictly inside (0, 1), got {tau}"
        )
    tp, fp = _benefit_counts(d, np.asarray([tau]))
    return float(tp[0] / d.n - (fp[0] / d.n) * (tau / (1.0 - tau)))


def treat_all_net_benefit(prevalence: float, tau) -> np.ndarray | float:
    """Net benefit of labeling everything positive: pi - (1-pi) * tau/(1-tau)."""
    tau = np.asarray(tau, dtype=float)
    out = prevalence - (1.0 - prevalence) * tau / (1.0 - tau)
    return float(out) if out.ndim == 0 else out


def bounded_net_benefit(d: LabeledScores, interval) -> float:
    """Uniform average of net benefit over a strictly interior interval.

    Uses the clip closed form: pi - (E[L(clip(s), y)] - E[L(clip(y), y)]) / (b-a)
    with pointwise loss L(x, y) = (1 - x) - (1 - y) ln(1 - x).  The sign of
    the y=1 branch is pinned by the exact-average oracle (a flat treat-none
    model must average to zero); only d/dx and the branch difference matter,
    so any constant offset would do.
    """
    iv = as_interval(interval)
    iv.require_interior("bounded net benefit")

    def pointwise(values: np.ndarray) -> float:
        clipped = iv.clip(values)
        loss = (1.0 - clipped) - (1 - d.labels) * np.log1p(-clipped)
        return float(np.mean(loss))

    score_term = pointwise(d.scores)
    label_term = pointwise(d.labels.astype(float))
    return d.prevalence - (score_term - label_term) / iv.width


@dataclass(frozen=True)
class DecisionCurve:
    """Sampled net-benefit curve with its reference policies."""

    thresholds: np.ndarray
    net_benefit: np.ndarray
    treat_all: np.ndarray
    prevalence: float

    @property
    def treat_none(self) -> np.ndarray:
        return np.zeros_like(self.thresholds)


def _refined_grid(d: LabeledScores, a: float, b: float, points: int) -> np.ndarray:
    """Uniform samples joined with the score breakpoints inside [a, b]."""
    base = np.linspace(a, b, points)
    bps = np.unique(d.scores)
    bps = bps[(bps > a) & (bps < b)]
    return np.unique(np.concatenate((base, bps)))


def decision_curve(
    d: LabeledScores, draw_range=(0.01, 0.99), points: int = 512
) -> DecisionCurve:
    """Net benefit against threshold on a breakpoint-refined grid."""
    iv = as_interval(draw_range)
    iv.require_interior("decision curve")
    taus = _refined_grid(d, iv.a, iv.b, points)
    tp, fp = _benefit_counts(d, taus)
    odds = taus / (1.0 - taus)
    nb = tp / d.n - (fp / d.n) * odds
    return DecisionCurve(
        thresholds=taus,
        net_benefit=nb,
        treat_all=treat_all_net_benefit(d.prevalence, taus),
        prevalence=d.prevalence,
    )


@dataclass(frozen=True)
class RescaledDecisionCurve:
    """Decision curve on a rescaled axis where its area is a bounded score.

    Points are (phi(c), prevalence - NB(c)); ``area`` is the exact weighted
    mean of that quantity over the interval, which equals bounded_brier/2
    for the quadratic rescaling and bounded_log_loss for the logarithmic one.
    """

    rescale: str
    thresholds: np.ndarray
    x: np.ndarray
    y: np.ndarray
    area: float
    prevalence: float


def rescaled_decision_curve(
    d: LabeledScores, interval, rescale: str, points: int = 512
) -> RescaledDecisionCurve:
    """Rescale the threshold axis so average net benefit matches a proper score."""
    iv = as_interval(interval)
    iv.require_interior("rescaled decision curve")
    if rescale not in (QUADRATIC, LOGARITHMIC):
        raise ValueError(f"unknown rescaling {rescale!r}")

    taus = _refined_grid(d, iv.a, iv.b, points)
    tp, fp = _benefit_counts(d, taus)
    nb = tp / d.n - (fp / d.n) * (taus / (1.0 - taus))
    y = d.prevalence - nb

    curve = minimal_regret_curve(d)
    if rescale == QUADRATIC:
        x = -0.5 * (1.0 - taus) ** 2
        area = integrate_regret(curve, iv, UNIFORM) / iv.width
    else:
        x = np.log(taus)
        area = integrate_regret(curve, iv, LOG_ODDS) / iv.log_odds_width
    return RescaledDecisionCurve(
        rescale=rescale, thresholds=taus, x=x, y=y, area=float(area),
        prevalence=d.prevalence,
    )


def average_net_benefit_exact(d: LabeledScores, interval) -> float:
    """Breakpoint-exact uniform mean of NB over [a, b], via the regret curve.

    Independent of the clip closed form in :func:`bounded_net_benefit`; the
    two must agree (NB(c) = pi - R(c)/(1-c) integrated term by term).
    """
    iv = as_interval(interval)
    iv.require_interior("average net benefit")
    curve = minimal_regret_curve(d)
    weighted = integrate_regret(curve, iv, ONE_OVER_ONE_MINUS_C)
    return d.prevalence - weighted / iv.width
