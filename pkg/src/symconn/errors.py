"""Exception types shared across the package."""


class DomainError(ValueError):
    """Arguments outside the documented domain of an operation."""


class PreconditionError(ValueError):
    """A caller-supplied point or system violates a stated precondition."""


class SolverError(RuntimeError):
    """The algebraic solver could not produce a valid parametrization."""


class InvalidCodeError(ValueError):
    """A sign code does not identify any real root of the given polynomial."""


class LocateFailure(RuntimeError):
    """No graph vertex could be matched to the queried point."""

    def __init__(self, message: str, advice: str = ""):
        super().__init__(message + (f" ({advice})" if advice else ""))
        self.advice = advice


class ParseError(ValueError):
    """A problem file or point file is malformed; carries a location hint."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
