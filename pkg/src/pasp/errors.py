"""Exception hierarchy shared by every layer of the solver."""


class PaspError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PaspError):
    """Malformed program text. Carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class NotDefiniteError(PaspError, ValueError):
    """An operation that needs a naf-free program got one with naf literals."""


class ScaleError(PaspError, ValueError):
    """A certainty scale or grid does not fit the program it is used with."""


class GuardError(PaspError):
    """A search space exceeded its configured resource bound.

    Raised instead of returning a truncated answer so that an incomplete
    search is never mistaken for "no answer sets".
    """
