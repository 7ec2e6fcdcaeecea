"""Exception types shared across the library."""


class ContractViolation(ValueError):
    """An input broke a documented precondition (length mismatch, bad flag
    values, invalid segment structure, colliding scatter destinations)."""


class EmptyInputError(ValueError):
    """A hull was requested for an empty point set."""


class DegenerateInputError(ValueError):
    """The input is too degenerate for the requested operation, e.g. an
    all-coplanar point set handed to the 3D hull driver."""
