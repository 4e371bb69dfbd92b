"""Exception hierarchy shared by all modules."""


class TetraError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TetraError, ValueError):
    """Arguments outside the mathematical domain (e.g. k > n)."""


class InputError(TetraError, ValueError):
    """Malformed user input: bad chains, bad labels, unparsable files."""


class ResourceError(TetraError):
    """Enumeration guard exceeded."""


class PreconditionError(TetraError, ValueError):
    """An operation was called on an argument it does not accept."""


class NumericError(TetraError, ArithmeticError):
    """Singular or ill-conditioned matrix where an inverse is needed."""


class DegeneracyError(TetraError, ValueError):
    """Line arrangement not in general position."""


class TieError(DegeneracyError):
    """Sweep direction is critical: two vertices project to the same value."""


class InternalError(TetraError, RuntimeError):
    """A consistency check inside the library failed; indicates a bug."""
