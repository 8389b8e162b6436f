"""Exception types shared across the package.

DomainError covers every "the input is outside the mathematical domain of
this operation" case; the CLI maps it to its own exit code.  Everything
else (internal inconsistencies, desk-scale search exhaustion declared
impossible by theory) raises InternalError so it is never mistaken for a
bad input.
"""


class QFError(Exception):
    """Base class for all package errors."""


class DomainError(QFError, ValueError):
    """Input outside the mathematical domain of the operation."""


class NotPositiveDefinite(DomainError):
    """Form is not positive definite (a <= 0 or discriminant >= 0)."""


class ImprimitiveForm(DomainError):
    """gcd(a, b, c) > 1; wrap in ScaledForm instead."""


class DiscriminantMismatch(DomainError):
    """Operands live in different discriminants."""


class NonGenericPrime(DomainError):
    """Prime divides the class polynomial discriminant mod p."""


class PrecisionError(QFError):
    """Requested or required precision outside the configured cap."""


class InternalError(QFError):
    """A theory-guaranteed search failed; indicates a bug, not bad input."""
