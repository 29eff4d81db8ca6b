"""Exception types shared across the package.

Everything raised on purpose derives from LexisError so callers (and the CLI)
can tell expected data problems apart from bugs.
"""
from __future__ import annotations


class LexisError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LexisError):
    """Input text or JSON could not be parsed."""


class EmptyCorpus(LexisError):
    """The corpus has no targets at all."""


class EmptyTarget(LexisError):
    """A target line is empty. Carries the 0-based target index; the
    message counts from 1 like a line number."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"target {index + 1} is empty")


class InvalidArgument(LexisError):
    """A parameter is out of its documented range."""


class InvalidCandidate(LexisError):
    """A proposed intermediate sequence is malformed (too short, unknown or
    unusable member nodes)."""


class TooFewOccurrences(LexisError):
    """A new intermediate needs at least two replacement occurrences."""


class OverlappingOccurrences(LexisError):
    """Replacement windows within one host overlap."""


class OccurrenceMismatch(LexisError):
    """A replacement window does not actually contain the candidate sequence."""


class ValidationError(LexisError):
    """A deserialized DAG violates structural invariants.

    Carries the violation list so callers can report all problems at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid DAG: {lines}")


class InvalidSpec(LexisError):
    """A synthetic-corpus specification is inconsistent."""
