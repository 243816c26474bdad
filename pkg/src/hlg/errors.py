"""Exception hierarchy shared by every module."""


class HLGError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class CompositeModulus(HLGError, ValueError):
    pass


class ZeroInput(HLGError, ValueError):
    pass


class NotLiftable(HLGError, ValueError):
    pass


class TooFewVariables(HLGError, ValueError):
    pass


class RankMismatch(HLGError, ValueError):
    pass


class SingularForm(HLGError, ValueError):
    pass


class PointNotOnCurve(HLGError, ValueError):
    pass


class BadReductionPrime(HLGError, ValueError):
    pass


class BadPrimeNotExcluded(HLGError, ValueError):
    pass


class NonPositiveConductor(HLGError, ValueError):
    pass


class InsufficientTerms(HLGError, ValueError):
    pass


class NoConsistentCandidate(HLGError, ValueError):
    pass


class EnumerationBudgetExceeded(HLGError, RuntimeError):
    pass


class NotASubgroup(HLGError, ValueError):
    pass


class NonabelianCoefficients(HLGError, ValueError):
    pass


class InvalidCocycle(HLGError, ValueError):
    pass


class InvalidGroup(HLGError, ValueError):
    pass
