"""Shared dataset factories and independent oracles used across the tests."""

from __future__ import annotations

import numpy as np
import pytest

from threshmix import LabeledScores


def random_dataset(rng: np.random.Generator, n_max: int = 50, allow_one_class: bool = False) -> LabeledScores:
    """Random labeled scores with deliberate ties and boundary values."""
    n = int(rng.integers(1, n_max + 1))
    labels = rng.integers(0, 2, n)
    if not allow_one_class and n >= 2:
        labels[0], labels[1] = 0, 1
    style = rng.integers(0, 3)
    if style == 0:
        scores = rng.random(n)
    elif style == 1:
        scores = np.round(rng.random(n), 1)  # heavy ties
    else:
        scores = rng.choice([0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0], size=n)
    return LabeledScores(labels, scores)


def two_class_dataset(rng: np.random.Generator, n_max: int = 50) -> LabeledScores:
    """Random dataset guaranteed to contain both classes (n >= 2)."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        labels = rng.integers(0, 2, n)
        if labels.sum() in (0, n):
            labels[0] = 0
            labels[1] = 1
        scores = rng.random(n) if rng.integers(0, 2) else np.round(rng.random(n), 1)
        return LabeledScores(labels, scores)


def calibrated_grouped(values, counts) -> LabeledScores:
    """Groups where the positive fraction at score v is exactly round(v * count)/count."""
    labels, scores = [], []
    for v, m in zip(values, counts):
        k = int(round(v * m))
        labels.extend([1] * k + [0] * (m - k))
        scores.extend([v] * m)
    return LabeledScores(np.array(labels), np.array(scores))


def brute_force_auc(d: LabeledScores) -> float:
    """Pair enumeration with half credit for ties; O(n_pos * n_neg)."""
    pos = d.scores[d.labels == 1]
    neg = d.scores[d.labels == 0]
    wins = ties = 0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1
            elif p == q:
                ties += 1
    return (wins + 0.5 * ties) / (len(pos) * len(neg))


def random_interior_interval(rng: np.random.Generator, lo: float = 0.02, hi: float = 0.98):
    a, b = np.sort(rng.uniform(lo, hi, size=2))
    while b - a < 0.05:
        a, b = np.sort(rng.uniform(lo, hi, size=2))
    return float(a), float(b)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
