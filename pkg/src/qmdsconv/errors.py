"""Exception hierarchy shared across the package."""

from __future__ import annotations


class QmdsError(Exception):
    """Base class for all errors raised by qmdsconv."""


class FieldError(QmdsError, ValueError):
    """Invalid field parameters or mixing elements of different fields."""


class ShapeError(QmdsError, ValueError):
    """Matrix operands with incompatible shapes."""


class InvalidCodeError(QmdsError, ValueError):
    """Code parameters that do not describe a well-formed code."""


class BudgetExceeded(QmdsError):
    """An exhaustive computation would exceed its configured budget."""


class PreconditionError(QmdsError, ValueError):
    """A construction was called outside the parameter range it requires.

    ``constraint`` names the violated condition so callers (the CLI in
    particular) can report it verbatim.
    """

    def __init__(self, constraint: str, detail: str = "") -> None:
        self.constraint = constraint
        msg = constraint if not detail else f"{constraint}: {detail}"
        super().__init__(msg)


class ConstructionError(QmdsError):
    """An internal consistency check of a construction failed."""


class FormatError(QmdsError, ValueError):
    """Malformed text record."""
