"""Weighted averages of minimal regret with pluggable threshold weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledScores
from .errors import LabelMismatchError, NonIntegrableError
from .interval import ThresholdInterval, as_interval
from .regret import (
    BETA,
    LOG_ODDS,
    UNIFORM,
    average_regret,
    minimal_regret_curve,
)

_KINDS = {"uniform": UNIFORM, "log-odds": LOG_ODDS, "beta": BETA}

DEFAULT_RANK_GRID = np.linspace(0.01, 0.99, 99)


@dataclass(frozen=True)
class WeightSpec:
    """A threshold-weight distribution: uniform, log-odds-uniform, or Beta."""

    kind: str = "uniform"
    alpha: float = 1.0
    beta_param: float = 1.0
    interval: ThresholdInterval | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "beta" and (self.alpha <= 0 or self.beta_param <= 0):
            raise ValueError("beta weights need alpha > 0 and beta_param > 0")
        if self.kind == "log-odds":
            if self.interval is None:
                raise NonIntegrableError(
                    "log-odds-uniform weight needs a strictly interior interval"
                )
            self.interval.require_interior("log-odds-uniform weight")


def h_measure(d: LabeledScores, w: WeightSpec) -> float:
    """Normalized weighted average of minimal regret over cost ratios.

    Reduces to brier/2 for the uniform weight on (0, 1) and to the bounded
    log loss for the log-odds-uniform weight on its interval.
    """
    curve = minimal_regret_curve(d)
    interval = w.interval if w.interval is not None else ThresholdInterval(0.0, 1.0)
    kind = _KINDS[w.kind]
    if kind == BETA:
        return average_regret(curve, interval, kind, alpha=w.alpha, beta=w.beta_param)
    return average_regret(curve, interval, kind)


@dataclass(frozen=True)
class RankTable:
    """Per-cost-ratio ordering of models by minimal regret (rank 1 is best)."""

    grid: np.ndarray
    regrets: np.ndarray  # (n_models, n_grid)
    ranks: np.ndarray  # (n_models, n_grid), ties broken by model index
    names: tuple[str, ...]

    def rank_of(self, model: int) -> np.ndarray:
        return self.ranks[model]


def rank_models(
    models: list[LabeledScores],
    grid=None,
    names: list[str] | None = None,
) -> RankTable:
    """Rank models by R(c) at each grid cost ratio; they must share labels."""
    if not models:
        raise ValueError("need at least one model")
    reference = models[0].labels
    for i, m in enumerate(models[1:], start=1):
        if m.n != models[0].n or not np.array_equal(m.labels, reference):
            raise LabelMismatchError(
                f"model {i} does not share the label column of model 0"
            )
    if grid is None:
        grid = DEFAULT_RANK_GRID
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0.0) or np.any(grid >= 1.0):
        raise ValueError("grid cost ratios must lie strictly inside (0, 1)")
    if names is None:
        names = [f"model-{i}" for i in range(len(models))]

    regrets = np.vstack([minimal_regret_curve(m).evaluate(grid) for m in models])
    ranks = np.empty_like(regrets, dtype=np.int64)
    for j in range(grid.size):
        order = np.argsort(regrets[:, j], kind="stable")  # stable = ties by index
        ranks[order, j] = np.arange(1, len(models) + 1)
    return RankTable(grid=grid, regrets=regrets, ranks=ranks, names=tuple(names))
