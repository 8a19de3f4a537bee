"""Error types for the learner; all failures derive from LearnerError."""

from __future__ import annotations


class LearnerError(Exception):
    """Base class for everything this package raises on purpose."""


class FormatError(LearnerError):
    """An input file does not follow its documented format."""


class DimensionMismatch(LearnerError):
    """Graph feature width does not match the first-layer weights."""
