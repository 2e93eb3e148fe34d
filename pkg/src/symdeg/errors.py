"""Exception hierarchy shared by all modules."""


class SymdegError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(SymdegError):
    pass


class DenominatorNotInvertible(SymdegError):
    pass


class OddSymplectic(SymdegError):
    pass


class OddN(SymdegError):
    pass


class BadParameters(SymdegError):
    pass


class Not2Nilpotent(SymdegError):
    pass


class NotDeltaFixed(SymdegError):
    pass


class NotAPatternProfile(SymdegError):
    pass


class TooLarge(SymdegError):
    pass


class AlgebraMismatch(SymdegError):
    pass


class DimensionVectorMismatch(SymdegError):
    pass


class NotSymmetricRep(SymdegError):
    pass


class NotStronglyOrthogonal(SymdegError):
    pass


class InvalidCertificate(SymdegError):
    pass
