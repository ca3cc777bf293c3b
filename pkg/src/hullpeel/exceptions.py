class PeelError(Exception):
    """Base class for errors raised by hullpeel."""


class DegenerateInputError(PeelError, ValueError):
    """Coincident or collinear points reached an exact predicate."""


class TooFewPointsError(PeelError, ValueError):
    pass


class PointInsideHullError(PeelError, ValueError):
    """A tangent query was issued from a point not strictly outside the hull."""


class UnknownPointError(PeelError, KeyError):
    pass


class InstanceTooLargeError(PeelError, ValueError):
    def __init__(self, message, combinations=None):
        super().__init__(message)
        self.combinations = combinations


class EmptyQueueError(PeelError, IndexError):
    pass


class InvariantViolation(PeelError, AssertionError):
    """An instrumented invariant check failed during peeling."""


class ParseError(PeelError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
