"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """An argument violates an operation's precondition."""


class CapacityExceeded(ValueError):
    """The input is too large for an exact/dense computation."""


class NumericalDomainError(ArithmeticError):
    """A quantity that must be real came out outside its domain."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same value disagree."""


class NotApplicable(ValueError):
    """The construction does not apply to this input."""


class Graph6Error(ValueError):
    """Malformed graph6 text. ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
