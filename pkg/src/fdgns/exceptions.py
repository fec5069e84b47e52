"""Exception hierarchy for fdgns."""


class FdgnsError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(FdgnsError, ValueError):
    """Objects do not fit together (wrong algebra, wrong shape, unverified morphism)."""


class ValidationError(FdgnsError, ValueError):
    """A value has the right shape but violates a mathematical requirement."""


class UnsupportedStructureError(FdgnsError, ValueError):
    """The operation is only defined for a narrower class of algebras."""


class PreconditionError(FdgnsError, ValueError):
    """A documented precondition of an operation does not hold."""


class SchemaError(FdgnsError, ValueError):
    """JSON input does not follow the expected schema.

    ``path`` names the offending field, e.g. ``"coeffs[3]"``.
    """

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
