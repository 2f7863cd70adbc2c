"""Exception types shared across the package."""


class BasisMismatch(ValueError):
    """Raised when an operation mixes incompatible generator bases."""


class ContextMismatch(ValueError):
    """Raised when vectors from different module contexts are combined."""


class DegreeCapExceeded(RuntimeError):
    """Raised when a computation would create a monomial above the context's degree cap."""


class ParityMismatch(ValueError):
    """Raised when a twisted mode index has the wrong half-integer parity for its state."""


class InhomogeneousVector(ValueError):
    """Raised when an operation requires a vector concentrated in a single degree."""


class NotSigmaEigenvector(ValueError):
    """Raised when an involution eigencomponent is requested of a non-eigenvector."""


class LiteralSyntaxError(ValueError):
    """Syntax error while parsing a vector literal; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownCase(KeyError):
    """Raised when a verification case id is not registered."""


class UnknownName(KeyError):
    """Raised when a named state is not recognized."""
