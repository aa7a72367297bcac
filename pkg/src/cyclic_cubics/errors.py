"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CubicFamilyError(Exception):
    """Base class for all errors raised by cyclic_cubics."""


class NotDivisible(CubicFamilyError, ArithmeticError):
    pass


class ZeroInput(CubicFamilyError, ValueError):
    pass


class ParseError(CubicFamilyError, ValueError):
    pass


class Degenerate(CubicFamilyError, ValueError):
    """f*g vanishes, so the integrality quotient is 0/0 and needs an override."""


class NotAFamily(CubicFamilyError, ValueError):
    """(f^3 + g^3 + 1) is not divisible by f*g."""


class DegenerateDiscriminant(CubicFamilyError, ValueError):
    """f == g, so the cubic has a repeated root."""


class PoleHit(CubicFamilyError, ZeroDivisionError):
    pass


class ZeroPivot(CubicFamilyError, ValueError):
    """The iteration pivot (f forwards, g backwards) is zero."""


class OffSurface(CubicFamilyError, ValueError):
    pass


class NonIntegralLambda(CubicFamilyError, ValueError):
    pass


class NotPrime(CubicFamilyError, ValueError):
    pass


class ZeroElement(CubicFamilyError, ValueError):
    pass


class PrecisionExhausted(CubicFamilyError, ArithmeticError):
    pass


class IncompleteFactorization(CubicFamilyError, ArithmeticError):
    pass


class DomainError(CubicFamilyError, ValueError):
    pass


class DegenerateRoots(CubicFamilyError, ValueError):
    pass


class OracleInconclusive(CubicFamilyError, RuntimeError):
    pass
