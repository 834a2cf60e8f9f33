"""Exception and warning types shared across the package."""


class ProjbalError(Exception):
    """Base class for all package errors."""


class DomainError(ProjbalError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PrecisionError(ProjbalError, ArithmeticError):
    """A quadrature or fit failed to stabilize within its budget."""


class ConditioningError(ProjbalError, ArithmeticError):
    """A matrix is too ill-conditioned for the requested operation."""


class AmbiguityError(ProjbalError, ArithmeticError):
    """A spectral cluster cannot be separated at the requested tolerance."""


class ThresholdError(ProjbalError, ValueError):
    """A k-dependent metric is indefinite below some minimal k.

    Carries ``k_min``, the smallest k found to give a positive metric,
    when the constructor was able to determine one.
    """

    def __init__(self, msg, k_min=None):
        super().__init__(msg)
        self.k_min = k_min


class EmptySectionSpaceError(ProjbalError, ValueError):
    """No holomorphic sections exist for the requested twist."""


class UnsupportedInputError(ProjbalError, ValueError):
    """Structurally valid input outside the implemented range."""


class SchemaError(ProjbalError, ValueError):
    """Configuration failed validation; ``fields`` lists offenders."""

    def __init__(self, msg, fields=()):
        super().__init__(msg)
        self.fields = tuple(fields)


class UnsupportedInputWarning(UserWarning):
    """A computation is outside the range where its guarantees hold."""
