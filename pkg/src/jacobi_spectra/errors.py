"""Exception types shared across the package."""


class JacobiError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(JacobiError):
    """Malformed sequence-spec text.

    ``position`` is the 0-based offset into the input where parsing failed.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class DomainError(JacobiError):
    """A value fell outside the mathematical domain of an operation."""
