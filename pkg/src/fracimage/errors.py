"""Exception types shared across the package."""


class FracimageError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracimageError):
    """A parameter or argument violates a documented validity condition.

    ``conditions`` holds the names/descriptions of the violated inequalities
    when the error comes from an operator domain check.
    """

    def __init__(self, message, conditions=()):
        super().__init__(message)
        self.conditions = tuple(conditions)


class PoleError(FracimageError):
    """A gamma factor was evaluated at a nonpositive integer.

    ``argument`` is the offending value, ``side`` is "numerator" or
    "denominator" when the pole arose inside a gamma product.
    """

    def __init__(self, message, argument=None, side=None):
        super().__init__(message)
        self.argument = argument
        self.side = side


class DenominatorPoleError(PoleError):
    """A lower series parameter hit a nonpositive integer before the
    series terminated, so a term denominator vanished."""


class DivergenceError(FracimageError):
    """The requested series does not converge for the given argument."""


class NonConvergedError(FracimageError):
    """An iterative evaluation failed to meet its tolerance within the
    configured budget."""


class UnsupportedKernelError(FracimageError):
    """The requested operator application has no supported quadrature
    scheme (e.g. a full two-variable Appell kernel)."""


class ConfigError(FracimageError):
    """A configuration file or command-line value could not be parsed."""
