"""Exception types raised by the library."""


class HerzError(ValueError):
    """Base class for all library errors."""


class NonConjugable(HerzError):
    """The exponent is <= 1 somewhere, so q/(q-1) is undefined."""


class DivergentConstant(HerzError):
    """A log-Holder constant estimate failed to stabilise under refinement."""


class InvalidSobolev(HerzError):
    """1/q1 - beta/n is not positive, so the Sobolev exponent does not exist."""


class InvalidGrid(HerzError):
    pass


class NonFiniteIntegrand(HerzError):
    pass


class InsufficientData(HerzError):
    pass


class SingularityBudgetExceeded(HerzError):
    """The innermost singular shell of a Riesz integral carries too much mass."""


class ConfigError(HerzError):
    """Malformed experiment configuration; the message names the field."""
