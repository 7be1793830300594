"""Exception hierarchy shared by the library and the command line."""


class RepdimError(Exception):
    """Base class for every error raised by this package."""


class GraphParseError(RepdimError, ValueError):
    """Malformed graph input.

    ``offset`` is a byte offset (graph6) and ``line`` a 1-based line number
    (edge lists); whichever does not apply is ``None``.
    """

    def __init__(self, message, offset=None, line=None):
        where = []
        if offset is not None:
            where.append(f"byte {offset}")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.offset = offset
        self.line = line


class NumericError(RepdimError, ArithmeticError):
    """A numerical routine failed (no convergence, residual too large)."""


class InapplicableError(RepdimError, ValueError):
    """An operation was asked of a graph outside its domain."""


class NotEDMError(RepdimError, ValueError):
    """The matrix is not a Euclidean distance matrix."""


class InconsistencyError(RepdimError, RuntimeError):
    """Two routes that must agree did not. This is a bug, not a user error."""
