"""Exception hierarchy shared by all fdp modules."""


class FDPError(ValueError):
    """Base class for domain errors (CLI maps these to exit status 1)."""


class NotPrime(FDPError):
    pass


class TooLarge(FDPError):
    pass


class LengthMismatch(FDPError):
    pass


class FieldMismatch(FDPError):
    pass


class ParameterOutOfRange(FDPError):
    pass


class DegreeOutOfRange(ParameterOutOfRange):
    pass


class RankDeficient(FDPError):
    pass


class InstanceTooLarge(FDPError):
    pass


class NoCollisionPairs(FDPError):
    pass


class InvalidFace(FDPError):
    pass


class LengthNotPowerOfTwo(FDPError):
    pass


class DimensionTooLarge(FDPError):
    pass


class SupportMismatch(FDPError):
    pass


class EmptyFamily(FDPError):
    pass
