"""Exception types shared across the package."""

from __future__ import annotations


class ThreshmixError(Exception):
    """Base class for all package-specific errors."""


class DatasetError(ThreshmixError, ValueError):
    """Base class for ingestion/validation failures."""


class MissingColumnError(DatasetError):
    """A configured column is absent from the CSV header."""


class NonBinaryLabelError(DatasetError):
    """A label value is not exactly 0 or 1."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class ScoreOutOfRangeError(DatasetError):
    """A score falls outside [0, 1] or is not finite."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EmptyDatasetError(DatasetError):
    """No data rows were found."""


class MalformedRowError(DatasetError):
    """A CSV row could not be parsed; carries the 1-based data row number."""

    def __init__(self, message: str, row: int):
        super().__init__(message)
        self.row = row


class DegenerateClassError(ThreshmixError, ValueError):
    """An operation needs both classes but one is empty."""


class NonIntegrableError(ThreshmixError, ValueError):
    """A divergent threshold weight was paired with an interval touching {0, 1}."""


class IntervalAtBoundaryError(ThreshmixError, ValueError):
    """An operation requires a strictly interior cost-ratio interval."""


class ThresholdAtBoundaryError(ThreshmixError, ValueError):
    """A threshold of exactly 0 or 1 is outside the operation's domain."""


class LabelMismatchError(ThreshmixError, ValueError):
    """Models being compared do not share the same label column."""


class SinkWriteError(ThreshmixError, OSError):
    """Writing emitted curve data to the output sink failed."""
