"""Exception hierarchy.

Every domain error derives from :class:`DomainError`; the CLI maps those to
exit code 1.
"""


class DomainError(Exception):
    """Base class for errors raised on mathematically invalid input."""


# exact arithmetic
class SubstitutionNotInvertible(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NotDivisible(DomainError):
    pass


class NotAComplex(DomainError):
    pass


# root data / Weyl groups
class RootDatumMismatch(DomainError):
    pass


class UnknownDatum(DomainError):
    pass


# Hecke algebra
class NotDominant(DomainError):
    pass


class NeedsSquareRoot(DomainError):
    pass


# Block-Getzler complexes
class TruncationTooSmall(DomainError):
    pass


class DifferentialNotSquareZero(DomainError):
    pass


# Steinberg model
class ModelInconsistent(DomainError):
    pass


# Langlands parameters
class RootOfUnityQ(DomainError):
    pass


class NotQCommuting(DomainError):
    pass


# GL_n blocks
class DimensionMismatch(DomainError):
    pass


class DuplicateLabel(DomainError):
    pass


class BadComposition(DomainError):
    pass
