"""Exception hierarchy shared by every cisnim module."""


class CisNimError(Exception):
    """Base class for all library errors."""


class DomainError(CisNimError, ValueError):
    """An argument lies outside the domain of an operation."""


class ParseError(CisNimError, ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class RangeError(CisNimError, IndexError):
    """A query falls outside what a solved table covers."""


class ResourceError(CisNimError, MemoryError):
    """The requested computation exceeds a configured memory ceiling."""


class FormatError(CisNimError, ValueError):
    """A cache stream is malformed, truncated or corrupt."""
