"""Exception hierarchy shared by all modules."""


class HyperpartError(Exception):
    pass


class ParameterError(HyperpartError, ValueError):
    """Invalid arguments: bad shapes, out-of-range sizes, inconsistent triples."""


class ResourceError(HyperpartError, RuntimeError):
    """An instance exceeds a configured size cap."""


class DegeneracyError(HyperpartError, ArithmeticError):
    """A test point lies exactly on a hyperplane where a strict side was required."""


class InvariantError(HyperpartError, RuntimeError):
    """An internal invariant failed; results must not be trusted."""
