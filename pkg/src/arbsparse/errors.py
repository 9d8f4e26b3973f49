"""Exception types shared across the package."""


class ArbsparseError(Exception):
    pass


class InputError(ArbsparseError, ValueError):
    """Bad argument or violated precondition."""


class ParseError(InputError):
    """Malformed graph, trace or solution file."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class CapabilityError(ArbsparseError, RuntimeError):
    """Input is outside what an exhaustive oracle is willing to handle."""
