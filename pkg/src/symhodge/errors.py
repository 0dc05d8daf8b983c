"""Exceptions shared across the package."""


class ValidationError(Exception):
    """A structural requirement on the input data failed."""


class OddDimension(ValidationError):
    """The underlying space must be even-dimensional."""


class NotClosed(ValidationError):
    """The candidate symplectic form is not closed."""


class Degenerate(ValidationError):
    """The candidate symplectic form has vanishing top power."""


class InvalidAlgebra(ValidationError):
    """The differential does not square to zero (Jacobi identity fails)."""
