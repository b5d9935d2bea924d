"""Exception hierarchy.

Errors fall in three groups that the CLI maps to distinct exit codes:
bad input (:class:`InputError`), constructions refused because no such
object can exist (:class:`Nonexistence`), and everything else.
"""

from __future__ import annotations


class MRDError(Exception):
    """Base class for every error raised by this package."""


class InputError(MRDError, ValueError):
    """The caller supplied invalid parameters or data."""


class NotPrime(InputError):
    pass


class ReduciblePolynomial(InputError):
    def __init__(self, which: str, coeffs):
        self.which = which
        self.coeffs = list(coeffs)
        super().__init__(f"{which} polynomial {self.coeffs} is reducible")


class LevelMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotSquare(DimensionMismatch):
    pass


class NotADivisor(InputError):
    pass


class NotABasis(InputError):
    pass


class CoordinatesDependent(InputError):
    pass


class BadDimension(InputError):
    pass


class UnknownSuite(InputError):
    pass


class PreconditionViolated(InputError):
    pass


class EvenCharacteristic(PreconditionViolated):
    pass


class Nonexistence(PreconditionViolated):
    """Refusal backed by a nonexistence theorem, not by malformed input."""


class DivisionByZero(MRDError, ZeroDivisionError):
    pass


class NotFound(MRDError, LookupError):
    pass


class NoSquareRootOfMinusOne(NotFound):
    pass


class NoSuchElement(NotFound):
    pass


class BudgetExceeded(MRDError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} codewords, budget is {budget}"
        )


class AlternatingObstruction(MRDError):
    pass


class ConsistencyError(MRDError, RuntimeError):
    """An internal identity that must hold did not (indicates a bug)."""
