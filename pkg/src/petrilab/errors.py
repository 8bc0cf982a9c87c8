"""Exception hierarchy shared by every petrilab module."""


class PetriLabError(Exception):
    """Base class for all errors raised by petrilab."""


class NotPrime(PetriLabError, ValueError):
    pass


class ReducibleModulus(PetriLabError, ValueError):
    pass


class CharacteristicTwo(PetriLabError, ValueError):
    pass


class DivisionByZero(PetriLabError, ZeroDivisionError):
    pass


class DimensionMismatch(PetriLabError, ValueError):
    pass


class EvenDegree(PetriLabError, ValueError):
    pass


class NotSquarefree(PetriLabError, ValueError):
    pass


class PointNotOnCurve(PetriLabError, ValueError):
    pass


class ZeroFunction(PetriLabError, ValueError):
    pass


class UnsupportedDivisor(PetriLabError, ValueError):
    pass


class NotEffective(PetriLabError, ValueError):
    pass


class NotSpecial(PetriLabError, ValueError):
    pass


class EmptyLinearSystem(PetriLabError, ValueError):
    pass


class ProductOutsideTarget(PetriLabError, ArithmeticError):
    """A product of sections failed to land in H^0(K); always an internal defect."""


class PencilHasBasePoint(PetriLabError):
    pass


class BudgetExceeded(PetriLabError):
    pass


class InfiniteField(PetriLabError, ValueError):
    pass


class InvalidRank(PetriLabError, ValueError):
    pass


class InvalidDims(PetriLabError, ValueError):
    pass
