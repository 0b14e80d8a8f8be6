"""Exception types raised across the package.

All of them derive from :class:`DDFError`, itself a :class:`ValueError`, so
callers that only care about "bad input" can catch one thing.
"""


class DDFError(ValueError):
    """Base class for validation failures."""


class NonPrimeCharacteristic(DDFError):
    pass


class ReducibleModulus(DDFError):
    pass


class ZeroConstantTerm(DDFError):
    pass


class DimensionMismatch(DDFError):
    pass


class SingularMatrix(DDFError):
    pass


class OverlappingClasses(DDFError):
    pass


class ElementOutOfRange(DDFError):
    pass


class EmptyClass(DDFError):
    pass


class LengthMismatch(DDFError):
    pass


class TooFewWords(DDFError):
    pass


class NotInNormalizer(DDFError):
    pass


class NotPartitionType(DDFError):
    pass


class DegenerateTaps(DDFError):
    pass


class NotPrimitive(DDFError):
    pass


class BadK(DDFError):
    pass


class NotTransitive(DDFError):
    pass


class BadBasePoint(DDFError):
    pass


class NotCoprime(DDFError):
    pass
