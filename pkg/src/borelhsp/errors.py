"""Exception hierarchy shared by all modules."""


class BorelHSPError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(BorelHSPError, ValueError):
    pass


class DegreeZero(BorelHSPError, ValueError):
    pass


class MixedContexts(BorelHSPError, TypeError):
    pass


class DivisionByZero(BorelHSPError, ZeroDivisionError):
    pass


class EvenCharacteristic(BorelHSPError, ValueError):
    pass


class FlavorMismatch(BorelHSPError, TypeError):
    pass


class NotInGroup(BorelHSPError, ValueError):
    pass


class DuplicatePoints(BorelHSPError, ValueError):
    pass


class NotUpperTriangular(BorelHSPError, ValueError):
    pass


class NotSquareGenerator(BorelHSPError, ValueError):
    pass


class PromiseViolation(BorelHSPError):
    pass


class NotKTransitive(BorelHSPError):
    """Raised when the index formula is requested for an action that is not k-transitive.

    The measured index is attached so callers can still report it.
    """

    def __init__(self, message, index=None, stabilizer_order=None):
        super().__init__(message)
        self.index = index
        self.stabilizer_order = stabilizer_order


class BudgetExceeded(BorelHSPError):
    """An enumeration would exceed the desk-scale budget."""


class FieldTooLarge(BudgetExceeded):
    pass


class GroupTooLarge(BudgetExceeded):
    pass


class DimensionTooLarge(BudgetExceeded):
    pass
