"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Malformed input: wrong shape, non-Hermitian matrix, out-of-range parameter."""


class PSDViolationError(ValidationError):
    """A matrix that should be positive semidefinite has a clearly negative eigenvalue."""


class ResourceLimitError(ValueError):
    """The requested computation exceeds the configured size cap."""


class DomainError(ValueError):
    """A formula was evaluated outside the parameter region where it is defined."""
