"""Exception hierarchy for convdyn."""


class ConvDynError(Exception):
    """Base class for all errors raised by convdyn."""


class TailUnavailable(ConvDynError):
    """A tail bound was requested for a series without a tail descriptor."""


class BlockTooLarge(ConvDynError, ValueError):
    """A gap-series block exponent exceeds what double precision supports."""


class DimensionTooSmall(ConvDynError, ValueError):
    """A function does not fit into the requested cylinder."""


class TrivialOperator(ConvDynError, ValueError):
    """The operation needs a symbol that is not a scalar multiple of the identity."""


class NotFound(ConvDynError):
    """A finite search ran out of budget.

    The full search log is available as ``log``.
    """

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = list(log or [])


class AssociatedMismatch(ConvDynError, ValueError):
    """The associated operator of a symbol differs from the expected one."""


class DependentGenerators(ConvDynError, ValueError):
    """Generators of a subspace are linearly dependent."""


class EqualScalars(ConvDynError, ValueError):
    """A Li-Yorke pair needs two distinct scalars."""


class ScaleOutOfRange(ConvDynError, ValueError):
    """A scalar difference is too small or too large to keep bounds meaningful."""


class ConfigError(ConvDynError, ValueError):
    """An experiment configuration is invalid.

    ``field`` names the offending configuration entry.
    """

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
