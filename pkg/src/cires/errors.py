"""Exception hierarchy shared by every module of the package."""


class CiresError(Exception):
    """Base class for all package errors."""


class NotPrime(CiresError, ValueError):
    pass


class DivisionByZero(CiresError, ZeroDivisionError):
    pass


class MixedParents(CiresError, TypeError):
    pass


class MixedAmbient(CiresError, TypeError):
    pass


class DegreeMismatch(CiresError, ValueError):
    pass


class Inhomogeneous(CiresError, ValueError):
    pass


class DegreeCapExceeded(CiresError, OverflowError):
    pass


class DegreeOutOfRange(CiresError, ValueError):
    pass


class RegularSequenceViolation(CiresError, ValueError):
    """Raised when generators fail the Hilbert-function regularity test.

    The failing :class:`~cires.report.VerificationReport` is attached as
    ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SocleDegenerate(CiresError, ArithmeticError):
    pass


class PreconditionViolated(CiresError, ValueError):
    pass


class FeasibilityCapExceeded(CiresError, ValueError):
    pass


class PropertyStarViolated(CiresError, ValueError):
    pass


class SpecializationExhausted(CiresError, RuntimeError):
    pass


class WrongCharacteristic(CiresError, ValueError):
    pass


class ParseError(CiresError, ValueError):
    pass
