"""Labeled prediction data: ingestion, validation, and empirical CDFs."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyDatasetError,
    MalformedRowError,
    MissingColumnError,
    NonBinaryLabelError,
    ScoreOutOfRangeError,
)

DEFAULT_LABEL_COLUMN = "y_true"
DEFAULT_SCORE_COLUMN = "y_pred"

STANDARD = "standard"
MID = "mid"


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LabeledScores:
    """Immutable collection of (label, score) pairs.

    Rows are kept in input order (duplicates retained with multiplicity);
    a canonical nondecreasing-score view is exposed via ``canonical_order``.
    """

    labels: np.ndarray
    scores: np.ndarray
    label_column: str = DEFAULT_LABEL_COLUMN
    score_column: str = DEFAULT_SCORE_COLUMN
    _order: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = np.asarray(self.labels)
        scores = np.asarray(self.scores, dtype=float)
        if labels.ndim != 1 or scores.ndim != 1 or labels.shape != scores.shape:
            raise ValueError("labels and scores must be 1-d arrays of equal length")
        if labels.size == 0:
            raise EmptyDatasetError("dataset must contain at least one row")
        if not np.all((labels == 0) | (labels == 1)):
            bad = labels[~((labels == 0) | (labels == 1))][0]
            raise NonBinaryLabelError(f"label {bad!r} is not in {{0, 1}}")
        if not np.all(np.isfinite(scores)):
            raise ScoreOutOfRangeError("scores must be finite")
        if scores.min() < 0.0 or scores.max() > 1.0:
            bad = scores[(scores < 0.0) | (scores > 1.0)][0]
            raise ScoreOutOfRangeError(f"score {bad} is outside [0, 1]")
        object.__setattr__(self, "labels", _readonly(labels.astype(np.int64)))
        object.__setattr__(self, "scores", _readonly(scores))
        # stable sort so ties keep input order in the canonical view
        object.__setattr__(
            self, "_order", _readonly(np.argsort(scores, kind="stable"))
        )

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def n_pos(self) -> int:
        return int(self.labels.sum())

    @property
    def n_neg(self) -> int:
        return self.n - self.n_pos

    @property
    def prevalence(self) -> float:
        return self.n_pos / self.n

    @property
    def canonical_order(self) -> np.ndarray:
        """Permutation sorting rows by nondecreasing score (stable)."""
        return self._order

    @property
    def scores_sorted(self) -> np.ndarray:
        return self.scores[self._order]

    @property
    def labels_sorted(self) -> np.ndarray:
        """Labels aligned with ``scores_sorted``."""
        return self.labels[self._order]

    def entries(self) -> list[tuple[int, float]]:
        """(label, score) pairs in input order."""
        return list(zip(self.labels.tolist(), self.scores.tolist()))

    def with_scores(self, scores: Sequence[float]) -> "LabeledScores":
        """Same labels (input order), different score column."""
        return LabeledScores(
            self.labels.copy(),
            np.asarray(scores, dtype=float),
            label_column=self.label_column,
            score_column=self.score_column,
        )

    def to_csv(self, sink) -> None:
        """Serialize in input order; round-trips exactly through load_csv."""
        close = False
        if isinstance(sink, (str, Path)):
            sink = open(sink, "w", newline="")
            close = True
        try:
            writer = csv.writer(sink, lineterminator="\n")
            writer.writerow([self.label_column, self.score_column])
            for label, score in zip(self.labels.tolist(), self.scores.tolist()):
                writer.writerow([label, repr(score)])
        finally:
            if close:
                sink.close()


def prevalence(d: LabeledScores) -> float:
    """Fraction of rows with label 1."""
    return d.prevalence


def _parse_number(token: str, row: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MalformedRowError(
            f"row {row}: cannot parse {column}={token!r} as a number", row=row
        ) from None
    if not np.isfinite(value):
        raise MalformedRowError(
            f"row {row}: {column}={token!r} is not finite", row=row
        )
    return value


def load_csv(
    source,
    label_column: str = DEFAULT_LABEL_COLUMN,
    score_column: str = DEFAULT_SCORE_COLUMN,
) -> LabeledScores:
    """Load (label, score) rows from a CSV file, path, text stream, or bytes.

    The header row is required.  Rows are validated one at a time so errors
    carry 1-based data row numbers (the header is row 0).
    """
    close = False
    if isinstance(source, (str, Path)):
        stream = open(source, "r", newline="", encoding="utf-8")
        close = True
    elif isinstance(source, bytes):
        stream = io.StringIO(source.decode("utf-8"))
    elif isinstance(source, io.IOBase) and not isinstance(source, io.TextIOBase):
        stream = io.TextIOWrapper(source, encoding="utf-8")
    else:
        stream = source

    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyDatasetError("input has no header row") from None
        header = [h.strip() for h in header]
        for needed in (label_column, score_column):
            if needed not in header:
                raise MissingColumnError(
                    f"column {needed!r} not in header {header}"
                )
        label_idx = header.index(label_column)
        score_idx = header.index(score_column)

        labels: list[int] = []
        scores: list[float] = []
        for row_no, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise MalformedRowError(
                    f"row {row_no}: expected {len(header)} fields, got {len(row)}",
                    row=row_no,
                )
            raw_label = _parse_number(row[label_idx].strip(), row_no, label_column)
            if raw_label not in (0.0, 1.0):
                raise NonBinaryLabelError(
                    f"row {row_no}: label {row[label_idx]!r} is not 0 or 1",
                    row=row_no,
                )
            score = _parse_number(row[score_idx].strip(), row_no, score_column)
            if not 0.0 <= score <= 1.0:
                raise ScoreOutOfRangeError(
                    f"row {row_no}: score {score} is outside [0, 1]", row=row_no
                )
            labels.append(int(raw_label))
            scores.append(score)

        if not labels:
            raise EmptyDatasetError("no data rows after the header")
        return LabeledScores(
            np.array(labels, dtype=np.int64),
            np.array(scores, dtype=float),
            label_column=label_column,
            score_column=score_column,
        )
    finally:
        if close:
            stream.close()


def from_pairs(pairs: Iterable[tuple[int, float]]) -> LabeledScores:
    """Build a dataset from (label, score) pairs."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyDatasetError("dataset must contain at least one row")
    labels = np.array([p[0] for p in pairs], dtype=np.int64)
    scores = np.array([p[1] for p in pairs], dtype=float)
    return LabeledScores(labels, scores)


@dataclass(frozen=True)
class EmpiricalDistributionPair:
    """Step-function class-conditional CDFs over the distinct score values.

    ``f0_cum``/``f1_cum`` hold cumulative class fractions at each breakpoint.
    Under the ``standard`` convention the value at a breakpoint is
    P(s <= t); under ``mid`` the mass exactly at the breakpoint counts half.
    A CDF is ``None`` when its class is empty (degenerate, flagged not fatal).
    """

    breakpoints: np.ndarray
    f0_cum: np.ndarray | None
    f1_cum: np.ndarray | None
    convention: str

    @property
    def degenerate(self) -> bool:
        return self.f0_cum is None or self.f1_cum is None

    def _eval(self, cum: np.ndarray, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints, t, side="right")
        padded = np.concatenate(([0.0], cum))
        return padded[idx]

    def cdf0(self, t):
        if self.f0_cum is None:
            raise ValueError("negative-class CDF undefined: no negative rows")
        return self._eval(self.f0_cum, t)

    def cdf1(self, t):
        if self.f1_cum is None:
            raise ValueError("positive-class CDF undefined: no positive rows")
        return self._eval(self.f1_cum, t)


def empirical_cdfs(d: LabeledScores, convention: str = STANDARD) -> EmpiricalDistributionPair:
    """Empirical F0/F1 over the distinct scores of ``d``.

    With ``convention="mid"`` the value at each breakpoint is
    P(s < t) + P(s = t)/2, the mid-distribution estimator used by the
    rank-based identities under ties.
    """
    if convention not in (STANDARD, MID):
        raise ValueError(f"unknown tie convention {convention!r}")
    order = d.canonical_order
    scores = d.scores[order]
    labels = d.labels[order]
    breakpoints, start = np.unique(scores, return_index=True)
    # per-breakpoint class counts
    n_at = np.diff(np.append(start, scores.size))
    pos_cum_rows = np.concatenate(([0], np.cumsum(labels)))
    pos_at = pos_cum_rows[start + n_at] - pos_cum_rows[start]
    neg_at = n_at - pos_at

    def cum(counts: np.ndarray, total: int) -> np.ndarray | None:
        if total == 0:
            return None
        through = np.cumsum(counts)
        if convention == MID:
            values = (through - counts / 2.0) / total
        else:
            values = through / total
        return _readonly(values.astype(float))

    return EmpiricalDistributionPair(
        breakpoints=_readonly(breakpoints),
        f0_cum=cum(neg_at, d.n_neg),
        f1_cum=cum(pos_at, d.n_pos),
        convention=convention,
    )
