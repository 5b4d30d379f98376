"""Exception types shared across the package."""


class MobiusError(Exception):
    """Base class for all package errors."""


class InputError(MobiusError):
    """Malformed text input or a value outside an operation's domain."""


class SingularMapError(InputError):
    """Coefficient quadruple with ad - bc too close to zero to denote a map."""


class DegenerateInputError(InputError):
    """Coincident points where pairwise distinct points are required."""


class IdentityMapError(InputError):
    """Operation undefined for the identity map (every point is fixed)."""


class InvalidInputError(InputError):
    """Precondition violation on an otherwise well-formed value."""


class UnsupportedSizeError(MobiusError):
    """Matrix size outside the implemented range; distinct from a negative verdict."""


class IndeterminateError(MobiusError):
    """The decision criteria disagree, which only happens near a tolerance boundary."""

    def __init__(self, message, trace_verdict=None, eigen_verdict=None,
                 multiplier_verdict=None, margin=None):
        super().__init__(message)
        self.trace_verdict = trace_verdict
        self.eigen_verdict = eigen_verdict
        self.multiplier_verdict = multiplier_verdict
        self.margin = margin


class VerificationError(MobiusError):
    """A constructed object failed its residual verification."""
