"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end; codes are
grouped by family so scripts can branch on them.
"""

from __future__ import annotations

# exit codes, one per family
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_DOMAIN = 4
EXIT_CAP = 5
EXIT_TIMEOUT = 6
EXIT_INTERNAL = 7


class LcaError(Exception):
    exit_code = EXIT_DOMAIN


# -- malformed input ---------------------------------------------------------

class InputError(LcaError, ValueError):
    exit_code = EXIT_INPUT


class ParseError(InputError):
    pass


class SplitError(InputError):
    """The left split does not fit inside the coefficient string."""


class ShapeError(InputError):
    pass


# -- mathematically invalid requests ----------------------------------------

class DomainError(LcaError, ValueError):
    exit_code = EXIT_DOMAIN


class DivByZero(DomainError, ZeroDivisionError):
    pass


class Undefined(DomainError):
    pass


class InvalidModulus(DomainError):
    pass


class InvalidInput(DomainError):
    pass


class NotIrreducible(DomainError):
    pass


class NoConstantTerm(DomainError):
    """The polynomial has f(0) = 0, so it has no period."""


class ZeroRule(DomainError):
    pass


class NotNormalized(DomainError):
    """The rule has a zero border coefficient or is not bilateral."""


class NotUnilateral(DomainError):
    pass


class NotOdd(DomainError):
    pass


class Singular(DomainError):
    pass


# -- resource limits ---------------------------------------------------------

class CapExceeded(LcaError):
    exit_code = EXIT_CAP


class FactorTimeout(LcaError):
    exit_code = EXIT_TIMEOUT

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        # prime -> exponent found so far, plus the unfactored cofactor under key None
        self.partial = partial or {}


# -- internal consistency ----------------------------------------------------

class CycleMismatch(LcaError):
    exit_code = EXIT_INTERNAL
