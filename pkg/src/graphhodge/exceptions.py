"""Exception hierarchy shared by all modules.

The CLI maps each class onto its own exit status, so callers can tell a
malformed document from a violated precondition or an unsolvable problem.
"""


class GraphHodgeError(Exception):
    """Base class for all errors raised by this package."""


class DocumentError(GraphHodgeError, ValueError):
    """An input document could not be parsed or is missing fields."""


class PreconditionError(GraphHodgeError, ValueError):
    """Inputs violate an operation's preconditions (shape, emptiness, connectivity...)."""


class SolvabilityError(GraphHodgeError, ValueError):
    """A boundary problem has no solution, e.g. Neumann fluxes that do not sum to zero."""


class VerificationError(GraphHodgeError, RuntimeError):
    """A numerical identity or verification report failed its tolerance."""


class NotLocallyExact(GraphHodgeError):
    """A 1-form is not exact on some patch of a cover.

    Attributes:
        patch: index of the first cover set on which the least-squares fit failed.
        residual: the relative residual on that patch.
    """

    def __init__(self, patch, residual):
        self.patch = patch
        self.residual = residual
        super().__init__(f"form is not exact on cover set {patch} (relative residual {residual:.3e})")
