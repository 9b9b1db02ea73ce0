"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class BMError(Exception):
    """Base class for all bmrel errors."""


class AmbientMismatchError(BMError, ValueError):
    """A letter or square lies outside the ambient (alpha, beta)."""


class StructuralCorruptionError(BMError, ValueError):
    """A relation violates the link condition in a way lookups cannot recover from."""


class BudgetExceededError(BMError, RuntimeError):
    """A configured solution, memory, or level-size cap was hit."""


class DisjointnessError(BMError, RuntimeError):
    """A psi level did not have the expected (3 + 2*beta) * |input| relations."""


class ParseError(BMError, ValueError):
    """Malformed text input. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
