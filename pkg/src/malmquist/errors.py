"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the set where the operation is defined."""


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""


class UnsupportedSpaceError(ValueError):
    """The requested operation is only defined for a subset of spaces."""


class ConditioningWarning(RuntimeWarning):
    """Emitted when a numerical step loses many digits."""
