"""Exception hierarchy shared by all modules."""


class GaussDisturbError(Exception):
    """Base class for every error raised by this package."""


class NonPhysical(GaussDisturbError):
    """Covariance matrix violates positivity or the uncertainty relation."""


class Singular(GaussDisturbError):
    pass


class Degenerate(GaussDisturbError):
    """Standard-form reduction has no admissible real solution."""


class OutOfRange(GaussDisturbError):
    pass


class DomainError(GaussDisturbError):
    pass


class ConvergenceError(GaussDisturbError):
    pass


class PrecisionError(GaussDisturbError):
    """Catastrophic cancellation left a probability clearly negative."""


class OptimizerDisagreement(GaussDisturbError):
    """Branch formula and the independent numeric search disagree."""


class SamplingExhausted(GaussDisturbError):
    pass


class NoCrossing(GaussDisturbError):
    pass


class ParseError(GaussDisturbError):
    pass


class DegenerateMarginal(UserWarning):
    """A vacuum marginal makes the Fock eigenbasis non-unique."""
