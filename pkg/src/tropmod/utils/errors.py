"""
Error Hierarchy
===============

Every failure the toolkit raises on purpose derives from ``TropmodError``.
The exit code travels with the exception so the CLI can map it directly:
1 for anything the user can fix, 2 for a broken internal invariant.
"""

from typing import Optional


class TropmodError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 1

    def __init__(self, message: str, *, hint: Optional[str] = None):
        self.message = message
        self.hint = hint
        super().__init__(message)

    def one_line(self) -> str:
        """Render the error as a single actionable line."""
        text = self.message.replace("\n", " ")
        if self.hint:
            text = f"{text} ({self.hint})"
        return text


class DomainError(TropmodError, ValueError):
    """A precondition of an operation is violated by its input."""


class ScaleLimitError(DomainError):
    """Input is beyond the desk-scale bound of an exhaustive computation."""

    def __init__(self, message: str, *, limit: int, actual: int):
        super().__init__(
            f"{message}: {actual} exceeds the limit of {limit}",
            hint="raise TROPMOD_MAX_EDGES to override",
        )
        self.limit = limit
        self.actual = actual


class InputFormatError(DomainError):
    """A graph, point or config document could not be parsed."""


class IntegrityViolation(TropmodError, AssertionError):
    """An internal invariant failed; this is an implementation bug, never user error."""

    exit_code = 2
