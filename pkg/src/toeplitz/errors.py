"""Exception types raised across the package."""


class ToeplitzError(Exception):
    """Base class for errors raised by this package."""


class NotDiagonal(ToeplitzError, ValueError):
    """An operation on the diagonal part received a term of nonzero index."""


class DegreeMismatch(ToeplitzError, ValueError):
    pass


class DomainError(ToeplitzError, ValueError):
    pass


class GuardBandTooSmall(ToeplitzError, ValueError):
    pass


class SpreadTooLarge(ToeplitzError, ValueError):
    """Too few sample points to separate the indices present in an element."""


class NoConvergence(ToeplitzError, ArithmeticError):
    pass


class ExprSyntaxError(ToeplitzError, ValueError):
    """Parse failure; carries the byte offset and the set of expected tokens."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class EvaluationError(ToeplitzError, ValueError):
    """A well-formed expression that does not denote an element or tensor."""
