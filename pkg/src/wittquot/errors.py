"""Exception types shared across the package."""


class FieldMismatch(ValueError):
    """Operands live over different fields."""


class AmbientMismatch(ValueError):
    """Operands live in different rings B_n or algebras W_n."""


class InvariantViolation(RuntimeError):
    """An identity that theory guarantees failed; indicates a bug, never bad input."""
