"""Exception types shared across the package.

CLI exit-code mapping: UsageError -> 1, ValidationError and PreconditionError -> 2,
ResourceCapError -> 3.
"""


class WlplanarError(Exception):
    pass


class UsageError(WlplanarError):
    pass


class ParseError(WlplanarError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(WlplanarError):
    pass


class PreconditionError(WlplanarError):
    pass


class ResourceCapError(WlplanarError):
    pass


class NotStableError(WlplanarError):
    """A colouring trace was truncated by max_rounds before reaching stability."""
