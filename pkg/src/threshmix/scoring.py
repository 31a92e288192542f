"""Proper scoring rules and their bounded / shifted variants.

All log quantities use natural logarithms (values are in nats).  The bounded
variants are the clip-based closed forms; they are deliberately implemented
from pointwise losses, independent of the piecewise regret integrals, so the
two routes can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import beta as beta_dist

from .dataset import LabeledScores
from .interval import ThresholdInterval, as_interval

COST_RATIO_AXIS = "cost-ratio"
LOG_ODDS_AXIS = "log-odds"

UNIFORM_C = "uniform-c"
LOG_ODDS_UNIFORM = "log-odds-uniform"
BETA_WEIGHTING = "beta"
POINT_WEIGHTING = "point"


@dataclass(frozen=True)
class ScoreReport:
    """A named metric value with the threshold weighting that produced it."""

    metric: str
    value: float
    interval: ThresholdInterval | None = None
    weighting: str = UNIFORM_C
    units: str = ""

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


def brier(d: LabeledScores) -> float:
    """Mean squared error of the forecasts, E[(y - s)^2]."""
    diff = d.labels - d.scores
    return float(np.mean(diff * diff))


def _pointwise_log_loss(scores: np.ndarray, labels: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.where(labels == 1, -np.log(scores), -np.log1p(-scores))


def log_loss(d: LabeledScores, clamp_epsilon: float | None = None) -> float:
    """Mean negative log likelihood in nats.

    A certain wrong forecast yields +inf unless ``clamp_epsilon`` is given,
    in which case scores are clipped to [eps, 1 - eps] first.
    """
    scores = d.scores
    if clamp_epsilon is not None:
        if not 0.0 < clamp_epsilon < 0.5:
            raise ValueError("clamp_epsilon must be in (0, 0.5)")
        scores = np.clip(scores, clamp_epsilon, 1.0 - clamp_epsilon)
    return float(np.mean(_pointwise_log_loss(scores, d.labels)))


def bounded_brier(d: LabeledScores, interval) -> float:
    """Brier score restricted to cost ratios in [a, b].

    Computed as (E[(y - clip(s))^2] - E[(y - clip(y))^2]) / (b - a), which
    equals twice the uniform average of minimal regret over the interval.
    On [0, 1] the label term vanishes and this is exactly ``brier``.
    """
    iv = as_interval(interval)
    clipped_s = iv.clip(d.scores)
    clipped_y = iv.clip(d.labels.astype(float))
    y = d.labels
    score_term = np.mean((y - clipped_s) ** 2)
    label_term = np.mean((y - clipped_y) ** 2)
    return float((score_term - label_term) / iv.width)


def bounded_log_loss(d: LabeledScores, interval) -> float:
    """Log loss restricted to log-odds-uniform cost ratios in a strict interior [a, b].

    Computed as (E[l(clip(s), y)] - E[l(clip(y), y)]) / W with l the standard
    negative-log pointwise loss and W the interval's log-odds width; equals
    the log-odds-uniform average of minimal regret.  Finite for any scores,
    including 0 and 1, because clipping keeps the loss arguments interior.
    """
    iv = as_interval(interval)
    iv.require_interior("bounded log loss")
    clipped_s = iv.clip(d.scores)
    clipped_y = iv.clip(d.labels.astype(float))
    score_term = np.mean(_pointwise_log_loss(clipped_s, d.labels))
    label_term = np.mean(_pointwise_log_loss(clipped_y, d.labels))
    return float((score_term - label_term) / iv.log_odds_width)


def shift_score(scores, mu: float):
    """Recenter forecasts so the log-odds of ``mu`` maps to even odds.

    log-odds(out) = log-odds(in) - log-odds(mu), extended by continuity to
    0 -> 0 and 1 -> 1.  The inverse shift is ``shift_score(out, 1 - mu)``.
    """
    if not 0.0 < mu < 1.0:
        raise ValueError(f"reference probability must be in (0, 1), got {mu}")
    s = np.asarray(scores, dtype=float)
    out = s * (1.0 - mu) / (s * (1.0 - mu) + (1.0 - s) * mu)
    return float(out) if np.isscalar(scores) else out


def shifted_brier(d: LabeledScores, mu: float) -> float:
    """Brier score of the recentered forecasts shift_score(s, mu).

    Equivalent to a regret mixture whose threshold weight is pushed toward
    the neighborhood of ``mu``; mu = 1/2 leaves the scores untouched.
    """
    shifted = shift_score(d.scores, mu)
    diff = d.labels - shifted
    return float(np.mean(diff * diff))


@dataclass(frozen=True)
class DensityCurve:
    """Sampled implicit threshold weight of a metric, for plotting.

    ``point_mass`` is set (and the arrays are empty) for weights that are a
    single atom, like the one accuracy places at even odds.  The log-loss
    weight is improper; its values are reported unnormalized.
    """

    kind: str
    axis: str
    x: np.ndarray
    density: np.ndarray
    point_mass: float | None = None
    normalized: bool = True


def weighting_density(
    kind: str,
    axis: str = COST_RATIO_AXIS,
    alpha: float | None = None,
    beta: float | None = None,
    points: int = 513,
) -> DensityCurve:
    """Implicit distribution over cost ratios for a metric, on either axis.

    On the log-odds axis the density carries the change-of-variables factor
    c(1-c), so e.g. the flat Brier weight becomes the unimodal c(1-c) curve.
    """
    if axis not in (COST_RATIO_AXIS, LOG_ODDS_AXIS):
        raise ValueError(f"unknown axis {axis!r}")
    if kind == "accuracy-point":
        location = 0.5 if axis == COST_RATIO_AXIS else 0.0
        empty = np.empty(0)
        return DensityCurve(kind, axis, empty, empty, point_mass=location)

    if axis == COST_RATIO_AXIS:
        x = np.linspace(0.0, 1.0, points + 2)[1:-1]
        c = x
        jacobian = np.ones_like(c)
    else:
        x = np.linspace(-6.0, 6.0, points)
        c = 1.0 / (1.0 + np.exp(-x))
        jacobian = c * (1.0 - c)

    if kind == "brier":
        density = np.ones_like(c) * jacobian
        return DensityCurve(kind, axis, x, density)
    if kind == "logloss":
        density = jacobian / (c * (1.0 - c))
        return DensityCurve(kind, axis, x, density, normalized=False)
    if kind == "beta":
        if alpha is None or beta is None or alpha <= 0 or beta <= 0:
            raise ValueError("beta weighting needs alpha > 0 and beta > 0")
        density = beta_dist.pdf(c, alpha, beta) * jacobian
        return DensityCurve(kind, axis, x, density)
    raise ValueError(f"unknown weighting kind {kind!r}")
