"""Exception hierarchy shared by every module of the package."""


class PlasticError(Exception):
    """Base class for all errors raised by this package."""


class InsufficientPrecisionError(PlasticError):
    """The requested working precision cannot support a correct answer."""


class PrecisionEscalationError(PlasticError):
    """A numeric solve was too ill-conditioned at the requested precision.

    Retrying with more digits is the expected remedy.
    """


class RootFindingError(PlasticError):
    """Simultaneous root iteration did not converge within its budget."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class IndeterminateError(PlasticError):
    """A root modulus sits too close to 1 to classify honestly."""


class CertificationError(PlasticError):
    """An exact check that the mathematics guarantees has failed.

    Raised only on internal inconsistency; seeing one means either a bug or a
    counterexample to a proven statement.
    """
