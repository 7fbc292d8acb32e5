"""Exception types shared across the package."""


class CtmLabError(Exception):
    """Base class for all errors raised by ctm-lab."""


class ValidationError(CtmLabError):
    """Invalid argument, malformed value, or mismatched metadata."""


class ParseError(CtmLabError):
    """Malformed text input; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
