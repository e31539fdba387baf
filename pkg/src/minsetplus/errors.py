class MinsetError(Exception):
    """Base class for errors raised by this package."""


class DatasetError(MinsetError, ValueError):
    """Malformed or inconsistent dataset (bad domain, kind mismatch, ...)."""


class MissingValueError(DatasetError):
    """An individual has a missing value where a complete row is required."""


class SelectionError(MinsetError):
    """Invalid request to the discrimination engine."""
