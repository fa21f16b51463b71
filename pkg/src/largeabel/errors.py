"""Exception hierarchy shared by the classification modules."""


class LargeAbelError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(LargeAbelError, ValueError):
    """A value does not have the shape its type requires."""


class DomainError(LargeAbelError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(LargeAbelError):
    """A brute-force search would exceed the configured size bound."""


class ConsistencyError(LargeAbelError):
    """An independently recomputed quantity disagrees with the stored one."""


class StateError(LargeAbelError):
    """An object is missing data required by the requested operation."""


class VerificationError(LargeAbelError):
    """A mandatory verification of an emitted object failed."""
