"""Exception types shared across the library."""


class Char1Error(ValueError):
    """Base class for all library errors."""


class PreconditionError(Char1Error):
    """An operation was called on inputs violating its stated precondition."""


class SchemaError(Char1Error):
    """A serialized value does not match the expected JSON shape."""
