"""Exception hierarchy shared across the library."""


class ExpmapsError(Exception):
    """Base class for all library errors."""


class InvalidArgs(ExpmapsError):
    pass


class MixedField(ExpmapsError):
    pass


class DivisionByZero(ExpmapsError):
    pass


class MixedRing(ExpmapsError):
    pass


class ZeroPolynomial(ExpmapsError):
    pass


class ZeroElement(ExpmapsError):
    pass


class ZeroRelation(ExpmapsError):
    pass


class NotHomogeneous(ExpmapsError):
    pass


class DoesNotSplit(ExpmapsError):
    """A residual factor of degree >= 2 does not split over the base field."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotADomain(ExpmapsError):
    pass


class NoLaurentModel(ExpmapsError):
    pass


class BoundTooSmall(ExpmapsError):
    pass


class TrivialMap(ExpmapsError):
    pass


class NonDivisibleDegree(ExpmapsError):
    pass


class RecursionNoProgress(ExpmapsError):
    pass


class ZeroDenominator(ExpmapsError):
    pass


class NotInvariantFraction(ExpmapsError):
    """The fraction a/b is not fixed by the map."""


class HomogenizationNotExponential(ExpmapsError):
    """Internal consistency failure: the homogenized map failed verification."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InvalidCharacteristic(ExpmapsError):
    pass


class InvalidExponents(ExpmapsError):
    pass


class NonInvariantScalars(ExpmapsError):
    pass


class ParseError(ExpmapsError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass


class ReservedName(ParseError):
    pass
