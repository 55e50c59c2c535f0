"""Exception types shared across the package."""


class CubelatError(Exception):
    """Base class for all cubelat errors."""


class DimensionError(CubelatError, ValueError):
    """Operands were built over different index-set sizes."""


class DomainError(CubelatError, ValueError):
    """A partial operation was applied outside its domain."""


class CapExceeded(CubelatError, ValueError):
    """A size cap (enumeration, dense backend, memory guard) was exceeded."""


class PreconditionError(CubelatError, ValueError):
    """An operator did not satisfy a structural precondition (unitary, projection, ...)."""
