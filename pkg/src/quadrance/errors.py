"""Exception types shared across the package."""


class QuadranceError(Exception):
    """Base class for all domain errors raised by this package."""


class NotPrime(QuadranceError):
    pass


class EvenCharacteristic(QuadranceError):
    pass


class TooLarge(QuadranceError):
    pass


class DivisionByZero(QuadranceError, ZeroDivisionError):
    pass


class NullClassInWrongField(QuadranceError):
    pass


class ZeroArgument(QuadranceError):
    pass


class CoincidentCenters(QuadranceError):
    pass


class ZeroQuadranceClass(QuadranceError):
    pass


class ZeroQuadrance(QuadranceError):
    pass


class LengthMismatch(QuadranceError):
    pass


class WrongResidueClass(QuadranceError):
    pass


class NotADivisor(QuadranceError):
    pass


class MalformedPartition(QuadranceError):
    pass


class NotStronglyRegular(QuadranceError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class EmptySubset(QuadranceError):
    pass
