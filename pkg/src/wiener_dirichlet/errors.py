"""Exception types raised by the library.

Every error derives from :class:`WienerDirichletError` so callers (and the CLI)
can separate domain failures from programming errors.
"""


class WienerDirichletError(Exception):
    """Base class for all library errors."""


class ValidationError(WienerDirichletError, ValueError):
    """Input data violates a documented precondition."""


class ComputationError(WienerDirichletError, ArithmeticError):
    """A well-formed computation could not be carried out."""


class IndexOverflow(ComputationError):
    """An index left the unsigned 64-bit range."""


class ConstantTermPresent(ValidationError):
    """The exponent series has a term at index 1."""


class ConstantSymbol(ValidationError):
    """The composition symbol is constant."""


class NotIndependent(ValidationError):
    """Frequencies are not multiplicatively independent."""


class NotApplicable(ValidationError):
    """A bound is used outside its range of validity."""


class MaxNotOnCircle(ValidationError):
    """The modulus of the auxiliary function does not reach 1."""


class DimensionMismatch(ValidationError):
    """Operands live in different numbers of variables."""


class SupNormExceedsOne(ValidationError):
    """A symbol does not map the disk into its closure."""


class HermiteOverflow(ComputationError):
    """A Hermite value left the double range; use the log-scaled routines."""
