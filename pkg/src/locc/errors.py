"""Exception types shared across the package."""


class LoccError(Exception):
    """Base class for all errors raised by locc."""


class Graph6Error(LoccError, ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EdgeListError(LoccError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"{message} (line {line})")
        self.line = line


class PreconditionError(LoccError, ValueError):
    """An operation was called outside its documented domain."""


class LimitExceeded(LoccError):
    """A configured size or enumeration guard was hit."""


class CoverResourceError(LimitExceeded):
    """The walk-class quotient grew past the class limit."""
