"""Exception hierarchy shared by all modules.

Every exception carries the CLI exit code it maps to, so the command-line
front end never has to guess.
"""


class PHTripletError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class ParseError(PHTripletError):
    exit_code = 1


class AssumptionViolated(PHTripletError):
    """Structural preconditions on the coefficient data do not hold."""

    exit_code = 2


class ParityViolated(AssumptionViolated):
    pass


class NotHermitian(PHTripletError):
    pass


class NonFinite(PHTripletError):
    pass


class NeitherHermitianNorSkew(PHTripletError):
    pass


class DimensionMismatch(PHTripletError):
    pass


class IntervalMismatch(PHTripletError):
    pass


class OrderZero(PHTripletError):
    pass


class DegeneratePencil(PHTripletError):
    """det of the symbol vanishes identically; the kernel is infinite-dimensional."""


class SingularA(PHTripletError):
    """The boundary matrix is not invertible, so only the reduced triplet exists."""
