"""Exception hierarchy shared by every module of the package."""


class DetSetError(Exception):
    """Base class for all errors raised by detset."""


class CompositeModulus(DetSetError, ValueError):
    def __init__(self, p):
        super().__init__(f"modulus {p} is not prime")
        self.p = p


class DivisionByZero(DetSetError, ZeroDivisionError):
    pass


class NoInverseInIntegerRing(DetSetError, ArithmeticError):
    pass


class RingMismatch(DetSetError, ValueError):
    pass


class SetTooSmall(DetSetError, ValueError):
    pass


class NotSquare(DetSetError, ValueError):
    pass


class ShapeMismatch(DetSetError, ValueError):
    pass


class BadPivotPair(DetSetError, ValueError):
    pass


class NotAMember(DetSetError, LookupError):
    """The requested value is not realizable by the construction."""


class MissingZeroOne(DetSetError, ValueError):
    pass


class Insufficient(DetSetError):
    """No covering construction fits inside the matrix-size budget."""

    def __init__(self, budget):
        super().__init__(f"no construction within matrix size budget {budget} covers the field")
        self.budget = budget


class BudgetExceeded(DetSetError):
    pass


class Degenerate(DetSetError, ValueError):
    pass
