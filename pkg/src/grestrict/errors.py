"""Exception types shared across the package."""

from __future__ import annotations


class GrestrictError(Exception):
    """Base class for all package errors."""


class ParseError(GrestrictError, ValueError):
    """Malformed permutation or generator text."""


class InputError(GrestrictError, ValueError):
    """Input that parses but violates a precondition."""


class DataError(InputError):
    """A bad record in a group data file."""

    def __init__(self, diagnostics: list[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class ResourceLimitError(GrestrictError):
    """A configured resource bound would be exceeded."""

    def __init__(self, what: str, value: int, bound: int):
        self.what = what
        self.value = value
        self.bound = bound
        super().__init__(f"{what} {value} exceeds bound {bound}")


class InvariantViolation(GrestrictError, AssertionError):
    """An internal consistency check failed."""
