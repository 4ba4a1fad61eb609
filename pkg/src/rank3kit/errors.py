"""Exception types shared by every module."""


class Rank3Error(Exception):
    """Base class for errors raised by rank3kit."""


class CapacityError(Rank3Error):
    """A configured enumeration or size cap was exceeded.

    ``cap`` names the limit and ``limit`` is its value, so callers can report
    exactly which knob to turn.
    """

    def __init__(self, cap, limit, detail=""):
        self.cap = cap
        self.limit = limit
        msg = f"capacity exceeded: {cap} (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class HypothesisError(Rank3Error, ValueError):
    """An operation was called outside the hypothesis it is defined for."""


class GroupFileError(Rank3Error, ValueError):
    """Malformed permutation, group file or table file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
