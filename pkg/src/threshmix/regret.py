"""Pointwise regret, the exact minimal-regret curve, and its exact integrals.

Decisions use the rule ``predict 1 iff score >= threshold`` (ties go to the
positive class), so every identity that couples regret to counting metrics
holds exactly on empirical data, including at thresholds that coincide with
observed scores.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .dataset import LabeledScores
from .errors import NonIntegrableError
from .interval import ThresholdInterval, as_interval

UNIFORM = "uniform"
LOG_ODDS = "log-odds"
ONE_OVER_ONE_MINUS_C = "one-over-one-minus-c"
BETA = "beta"

_WEIGHTS = (UNIFORM, LOG_ODDS, ONE_OVER_ONE_MINUS_C, BETA)


def validate_cost_ratio(c: float) -> float:
    """Cost ratios live strictly inside (0, 1); endpoints are reserved for limits."""
    c = float(c)
    if not 0.0 < c < 1.0:
        raise ValueError(f"cost ratio must be in the open interval (0, 1), got {c}")
    return c


def _decision_counts(d: LabeledScores, tau: float) -> tuple[int, int]:
    """(false positives, false negatives) under ``score >= tau -> predict 1``."""
    predicted_pos = d.scores >= tau
    fp = int(np.count_nonzero(predicted_pos & (d.labels == 0)))
    fn = int(np.count_nonzero(~predicted_pos & (d.labels == 1)))
    return fp, fn


def regret(d: LabeledScores, c: float, tau: float) -> float:
    """Expected decision cost at threshold ``tau`` with cost ratio ``c``.

    Equals c * P(y=0, s >= tau) + (1-c) * P(y=1, s < tau); perfect
    prediction is the zero-cost baseline.
    """
    c = validate_cost_ratio(c)
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {tau}")
    fp, fn = _decision_counts(d, tau)
    return (c * fp + (1.0 - c) * fn) / d.n


def accuracy(d: LabeledScores, tau: float) -> float:
    """Fraction of correct decisions at ``tau``; equals 1 - 2*regret(c=1/2, tau)."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {tau}")
    fp, fn = _decision_counts(d, tau)
    return (d.n - fp - fn) / d.n


@dataclass(frozen=True)
class RegretCurve:
    """Minimal regret as an exact piecewise-affine function of the cost ratio.

    Segment i covers (breakpoints[i], breakpoints[i+1]] and evaluates to
    ``intercepts[i] + slopes[i] * c``; evaluation is left-continuous at
    breakpoints, matching ties-to-positive thresholding.  Writing u, v for a
    segment's intercept and slope, ``u = pi * F1`` is the false-negative mass
    and ``u + v = (1 - pi) * (1 - F0)`` the false-positive mass on it.
    """

    breakpoints: np.ndarray
    intercepts: np.ndarray
    slopes: np.ndarray
    prevalence: float

    def __post_init__(self):
        for name in ("breakpoints", "intercepts", "slopes"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.breakpoints.size != self.intercepts.size + 1:
            raise ValueError("need one more breakpoint than segment")

    @property
    def n_segments(self) -> int:
        return int(self.intercepts.size)

    def segment_index(self, c) -> np.ndarray:
        """Index of the segment whose half-open interval (lo, hi] contains c."""
        c = np.asarray(c, dtype=float)
        if np.any(c <= 0.0) or np.any(c >= 1.0):
            raise ValueError("cost ratios must lie strictly inside (0, 1)")
        return np.searchsorted(self.breakpoints, c, side="left") - 1

    def evaluate(self, c):
        """Minimal regret at cost ratio(s) c in (0, 1)."""
        c_arr = np.asarray(c, dtype=float)
        idx = self.segment_index(c_arr)
        out = self.intercepts[idx] + self.slopes[idx] * c_arr
        return float(out) if np.isscalar(c) or c_arr.ndim == 0 else out

    def __call__(self, c):
        return self.evaluate(c)


def minimal_regret_curve(d: LabeledScores) -> RegretCurve:
    """Exact curve of regret at the matched threshold tau = c."""
    pi = d.prevalence
    distinct = np.unique(d.scores)
    breakpoints = np.unique(np.concatenate(([0.0], distinct, [1.0])))
    left = breakpoints[:-1]

    pos_scores = np.sort(d.scores[d.labels == 1])
    neg_scores = np.sort(d.scores[d.labels == 0])
    # class mass with score <= left endpoint == mass below any c in the segment
    f1 = (
        np.searchsorted(pos_scores, left, side="right") / pos_scores.size
        if pos_scores.size
        else np.zeros_like(left)
    )
    f0 = (
        np.searchsorted(neg_scores, left, side="right") / neg_scores.size
        if neg_scores.size
        else np.zeros_like(left)
    )

    intercepts = pi * f1
    slopes = (1.0 - pi) * (1.0 - f0) - pi * f1
    return RegretCurve(breakpoints, intercepts, slopes, pi)


def _segment_integral_uniform(u, v, lo, hi):
    return u * (hi - lo) + 0.5 * v * (hi * hi - lo * lo)


def _segment_integral_log_odds(u, v, lo, hi):
    # integrand (u + v c) / (c (1 - c)) = u/c + (u + v)/(1 - c)
    return u * (np.log(hi) - np.log(lo)) + (u + v) * (
        np.log1p(-lo) - np.log1p(-hi)
    )


def _segment_integral_inv1mc(u, v, lo, hi):
    # integrand (u + v c) / (1 - c) = (u + v)/(1 - c) - v
    return (u + v) * (np.log1p(-lo) - np.log1p(-hi)) - v * (hi - lo)


def weight_normalizer(interval, weight: str = UNIFORM, alpha: float | None = None,
                      beta: float | None = None) -> float:
    """Total weight mass on the interval (the normalizer of weighted means)."""
    iv = as_interval(interval)
    if weight == UNIFORM:
        return iv.width
    if weight == LOG_ODDS:
        return iv.log_odds_width
    if weight == ONE_OVER_ONE_MINUS_C:
        return float(np.log1p(-iv.a) - np.log1p(-iv.b))
    if weight == BETA:
        return float(betainc(alpha, beta, iv.b) - betainc(alpha, beta, iv.a))
    raise ValueError(f"unknown weight kind {weight!r}")


def integrate_regret(
    curve: RegretCurve,
    interval,
    weight: str = UNIFORM,
    alpha: float | None = None,
    beta: float | None = None,
) -> float:
    """Exact integral of weight(c) * R(c) over the interval.

    Each affine segment is integrated in closed form (incomplete-beta terms
    for the beta weight), so the result is breakpoint-exact rather than
    quadrature-approximate.  The beta weight is the normalized Beta(alpha,
    beta) density; the others are the raw functions 1, 1/(c(1-c)), 1/(1-c).
    """
    iv = as_interval(interval)
    if weight not in _WEIGHTS:
        raise ValueError(f"unknown weight kind {weight!r}; expected one of {_WEIGHTS}")
    if weight == LOG_ODDS and not iv.is_interior:
        raise NonIntegrableError(
            f"log-odds weight diverges at the endpoints; interval [{iv.a}, {iv.b}] must be interior"
        )
    if weight == ONE_OVER_ONE_MINUS_C and iv.b >= 1.0:
        raise NonIntegrableError(
            "1/(1-c) weight diverges at c=1; the interval must satisfy b < 1"
        )
    if weight == BETA:
        if alpha is None or beta is None or alpha <= 0 or beta <= 0:
            raise ValueError("beta weight needs alpha > 0 and beta > 0")

    bp = curve.breakpoints
    lo = np.maximum(bp[:-1], iv.a)
    hi = np.minimum(bp[1:], iv.b)
    mask = lo < hi
    if not np.any(mask):
        return 0.0
    u = curve.intercepts[mask]
    v = curve.slopes[mask]
    lo = lo[mask]
    hi = hi[mask]

    if weight == UNIFORM:
        parts = _segment_integral_uniform(u, v, lo, hi)
    elif weight == LOG_ODDS:
        parts = _segment_integral_log_odds(u, v, lo, hi)
    elif weight == ONE_OVER_ONE_MINUS_C:
        parts = _segment_integral_inv1mc(u, v, lo, hi)
    else:
        mean = alpha / (alpha + beta)
        parts = u * (betainc(alpha, beta, hi) - betainc(alpha, beta, lo)) + (
            v * mean * (betainc(alpha + 1.0, beta, hi) - betainc(alpha + 1.0, beta, lo))
        )
    return float(np.sum(parts))


def average_regret(
    curve: RegretCurve,
    interval,
    weight: str = UNIFORM,
    alpha: float | None = None,
    beta: float | None = None,
) -> float:
    """Weighted mean of R over the interval: integral / total weight."""
    total = weight_normalizer(interval, weight, alpha, beta)
    return integrate_regret(curve, interval, weight, alpha, beta) / total
