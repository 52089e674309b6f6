"""Exception hierarchy shared by the library and the command line front end."""


class TangentFillError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(TangentFillError, ValueError):
    """Malformed or unsupported input: non-prime characteristic, oversized field,
    mismatched fields, unparseable curve spec, zero triple, ..."""


class FieldMismatchError(InvalidInputError):
    """Operands belong to different fields."""


class DomainError(TangentFillError, ValueError):
    """A mathematical precondition fails (e.g. the characteristic is too small)."""


class VerificationError(TangentFillError, RuntimeError):
    """An internal self-check failed. This indicates a bug, not bad input."""
