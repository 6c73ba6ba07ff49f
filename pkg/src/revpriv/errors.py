"""Exception hierarchy shared by every revpriv module."""

from __future__ import annotations


class RevPrivError(Exception):
    """Base class for all errors raised by revpriv."""


class ParseError(RevPrivError):
    """Input could not be parsed in the declared format."""


class ValidationError(RevPrivError):
    """Input parsed but violates a choice-problem invariant.

    ``location`` points at the offending record (e.g. ``"observations[3]"``).
    """

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class CyclicInput(RevPrivError):
    """A relation that must be acyclic contains a cycle."""

    def __init__(self, cycle: list):
        self.cycle = cycle
        super().__init__(f"relation is cyclic: {' -> '.join(map(str, cycle))}")


class InternalInvariantViolation(RevPrivError):
    """A construction that is guaranteed to succeed did not. Always a bug."""


class LevelCapExceeded(RevPrivError):
    def __init__(self, k: int, cap: int):
        self.k = k
        self.cap = cap
        super().__init__(f"level {k} exceeds the configured cap of {cap}")


class TieError(RevPrivError):
    """An additive model scores two or more alternatives of a menu equally."""

    def __init__(self, menu, tied):
        self.menu = menu
        self.tied = tied
        super().__init__(
            f"menu {sorted(menu)} has tied maximizers {sorted(tied)}"
        )


class GenerationFailed(RevPrivError):
    pass
