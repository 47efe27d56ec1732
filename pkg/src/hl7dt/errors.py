"""Exception hierarchy shared by every data type module."""


class HL7Error(Exception):
    """Base class for domain errors (CLI maps these to exit status 1)."""


class ParseError(HL7Error, ValueError):
    pass


class UnknownNullFlavor(ParseError):
    pass


class NullFlavorNotAllowed(HL7Error, ValueError):
    pass


class NullOperand(HL7Error):
    pass


class DivideByZero(HL7Error, ZeroDivisionError):
    pass


# units
class UnitError(HL7Error):
    pass


class UnknownAtom(UnitError, ParseError):
    pass


class UnknownPrefix(UnitError, ParseError):
    pass


class UnitSyntaxError(UnitError, ParseError):
    pass


class UnsupportedUnit(UnitError, ParseError):
    pass


class NotComparable(HL7Error):
    pass


# time / interval
class InvalidDate(ParseError):
    pass


class BoundsReversed(ParseError):
    pass


# registries
class FormatError(HL7Error):
    pass


class CycleError(FormatError):
    pass


class DanglingReference(FormatError):
    pass


# terminology
class InvalidCode(HL7Error):
    pass


class UnknownDomain(HL7Error):
    pass


class UnknownCode(HL7Error):
    pass


class DifferentCodeSystem(HL7Error):
    pass


# identifiers and casts
class InvalidRoot(ParseError):
    pass


class NullNotAllowed(HL7Error):
    pass


class CastError(HL7Error, TypeError):
    pass
