class TwoSelmerError(Exception):
    """Base class for library errors."""


class ConfigurationError(TwoSelmerError, ValueError):
    """Malformed user configuration (bad congruence filter, bad bound, ...)."""


class DomainError(TwoSelmerError, ValueError):
    """Input outside an operation's domain (singular curve, zero discriminant, ...)."""


class SearchCapExceeded(TwoSelmerError):
    """A bounded search would exceed its configured cap; results would be incomplete."""

    def __init__(self, message, *, needed=None, cap=None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap
        self.incomplete = True


class ConsistencyError(TwoSelmerError, AssertionError):
    """An internal invariant failed; signals a bug rather than bad input."""
