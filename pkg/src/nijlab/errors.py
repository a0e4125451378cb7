"""Exception hierarchy shared by every nijlab module."""

from __future__ import annotations


class NijlabError(Exception):
    """Base class for all library errors."""


class DivisionByZero(NijlabError, ZeroDivisionError):
    pass


class PoleError(NijlabError, ZeroDivisionError):
    pass


class UnboundIndeterminate(NijlabError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unbound indeterminate"


class ZeroInput(NijlabError, ValueError):
    pass


class DegreeOverflow(NijlabError, ArithmeticError):
    pass


class ScalarSyntaxError(NijlabError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbol(ScalarSyntaxError):
    pass


class DimensionMismatch(NijlabError, ValueError):
    pass


class SingularMatrix(NijlabError, ValueError):
    pass


class EigenvalueConstraintViolated(NijlabError, ValueError):
    pass


class UnknownName(NijlabError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown name"


class OddDimension(NijlabError, ValueError):
    pass


class NotAlmostComplex(NijlabError, ValueError):
    def __init__(self, message: str, defects=None) -> None:
        super().__init__(message)
        self.defects = defects or []


class SymbolicCoefficients(NijlabError, ValueError):
    pass


class WrongDegree(NijlabError, ValueError):
    pass


class RetractionFailure(NijlabError, ArithmeticError):
    pass
