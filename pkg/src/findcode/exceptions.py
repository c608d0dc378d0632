"""Exception hierarchy shared by all modules."""
from __future__ import annotations

from typing import Any


class FindCodeError(Exception):
    """Base class for all library errors."""


class InvalidInputError(FindCodeError, ValueError):
    """Malformed documents, out-of-range symbols, non-stochastic rows."""


class ResourceLimitError(FindCodeError):
    """A configured guard (budget, size, blocklength) was hit.

    ``details`` is a JSON-serialisable mapping used by the CLI diagnostic.
    """

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details


class BudgetExhausted(ResourceLimitError):
    """A computable-real evaluation ran out of its step budget."""


class InfeasibleError(FindCodeError):
    """The request has no solution with the given parameters."""
