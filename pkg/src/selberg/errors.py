"""Exception types shared by all evaluators."""


class SelbergError(Exception):
    pass


class DomainError(SelbergError, ValueError):
    """An argument lies outside the region where a formula is defined."""


class UnsupportedParameterError(SelbergError, ValueError):
    """The requested pipeline does not handle these parameters (e.g. odd d)."""


class ConsistencyError(SelbergError, AssertionError):
    """An internal identity that must hold exactly was violated."""


class ResourceLimitError(SelbergError):
    """A desk-scale guard was exceeded."""
