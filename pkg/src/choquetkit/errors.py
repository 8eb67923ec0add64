"""Exception types shared across the toolkit.

Validation failures raise; solver outcomes that an analyst must inspect
(inconsistency cycles, monotonicity conflicts) are returned as result
objects by the owning modules instead.
"""

from __future__ import annotations


class ChoquetkitError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(ChoquetkitError):
    """Operands refer to different criteria counts or vector lengths."""


class NotNormalized(ChoquetkitError):
    """A capacity does not take value 0 on the empty set and 1 on the full set."""


class NotMonotone(ChoquetkitError):
    """A capacity decreases along set inclusion.

    ``violations`` holds every covering pair ``(a_bits, b_bits)`` with
    ``b = a | {i}`` and ``value(a) > value(b)``.
    """

    def __init__(self, message: str, violations: list[tuple[int, int]]):
        super().__init__(message)
        self.violations = violations


class EmptyGenerator(ChoquetkitError):
    """A unanimity game was requested for the empty coalition."""


class TooLarge(ChoquetkitError):
    """The criteria count exceeds a guarded enumeration limit."""


class BadWeights(ChoquetkitError):
    """Additive weights are negative or do not sum to one."""


class NotZeroOne(ChoquetkitError):
    """A capacity expected to take only the values 0 and 1 does not."""


class UnknownLevel(ChoquetkitError):
    """A judgment refers to a level id absent from the attribute scale."""


class DegenerateEndpoints(ChoquetkitError):
    """The judgments do not force the top reference level above the bottom one."""


class MissingRatio(ChoquetkitError):
    """A required exact-ratio judgment is absent."""


class OutOfRange(ChoquetkitError):
    """A value lies outside the unit satisfaction interval."""


class SameCriterion(ChoquetkitError):
    """An interaction index was requested for a criterion with itself."""


class IncompleteAct(ChoquetkitError):
    """An act does not assign a level to every criterion."""


class MalformedDocument(ChoquetkitError):
    """A JSON document does not match its declared schema."""
