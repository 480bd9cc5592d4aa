"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TwualityError(Exception):
    """Base class for all errors raised by ptwuality."""


class ContractViolation(TwualityError, ValueError):
    """An argument does not satisfy an operation's precondition."""


class SingularMatrix(TwualityError, ArithmeticError):
    """Inversion of a singular matrix was requested."""


class SingularPrincipalMinor(SingularMatrix):
    """The principal submatrix chosen as a pivot block is singular."""


class SizeCapExceeded(TwualityError):
    """A subset enumeration would exceed the configured size cap."""

    def __init__(self, n: int, cap: int):
        super().__init__(f"index set of size {n} exceeds the cap of {cap} (raise it with max_n / --max-n)")
        self.n = n
        self.cap = cap


class InternalInvariantViolation(TwualityError, AssertionError):
    """A mathematically guaranteed property failed; indicates a bug."""


class ZeroPolynomial(TwualityError, ValueError):
    """An operation that needs a nonzero polynomial received zero."""


class NotBlockDiagonal(ContractViolation):
    """A matrix has nonzero entries between the two parts of a partition."""


class UnsupportedOperator(ContractViolation):
    """The requested twuality operator is not available for this operation."""


class ParseError(TwualityError, ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
