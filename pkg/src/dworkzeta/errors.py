"""Exception hierarchy shared by every module of the package."""


class DworkZetaError(Exception):
    """Base class for all errors raised by dworkzeta."""


# field construction / arithmetic
class NonPrimeP(DworkZetaError, ValueError):
    pass


class ReducibleModulus(DworkZetaError, ValueError):
    pass


class TableCapExceeded(DworkZetaError, ValueError):
    pass


class DivisionByZero(DworkZetaError, ZeroDivisionError):
    pass


class IncompatibleFields(DworkZetaError, ValueError):
    pass


# characters and sums
class ZeroArgument(DworkZetaError, ValueError):
    pass


class EmptyList(DworkZetaError, ValueError):
    pass


class OrderUnavailable(DworkZetaError, ValueError):
    """A character of the requested order does not exist on this field."""


class OrderMismatch(DworkZetaError, ValueError):
    pass


class ToleranceExceeded(DworkZetaError, ArithmeticError):
    """A numerical identity or an integer rounding missed its tolerance."""

    def __init__(self, message, identity=None, witness=None, residual=None):
        super().__init__(message)
        self.identity = identity
        self.witness = witness
        self.residual = residual


class RoundingFailure(ToleranceExceeded):
    pass


class FormMismatch(ToleranceExceeded):
    pass


# orbits
class NotPrime(DworkZetaError, ValueError):
    pass


class NTooLarge(DworkZetaError, ValueError):
    pass


class PairingBoundViolated(DworkZetaError, AssertionError):
    pass


# counting / formulas
class PDividesN(DworkZetaError, ValueError):
    pass


class PsiZero(DworkZetaError, ValueError):
    pass


class LambdaZero(DworkZetaError, ValueError):
    pass


class SpecialClass(DworkZetaError, ValueError):
    pass


class PairingInvariantViolated(DworkZetaError, ValueError):
    pass


class NonIntegralMultiplicity(DworkZetaError, AssertionError):
    pass


class CongruenceViolated(DworkZetaError, ValueError):
    """q is not congruent to 1 modulo n."""


class CountingBug(DworkZetaError, AssertionError):
    """A brute-force count broke an invariant that holds for every variety."""


class NonIntegral(DworkZetaError, ArithmeticError):
    pass
