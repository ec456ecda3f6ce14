"""Exception hierarchy.

Every error raised on purpose by the library derives from ``CyclomodError``;
the CLI reports the class name and exits with status 1.
"""


class CyclomodError(Exception):
    pass


# intpoly
class NonMonicDivisor(CyclomodError, ValueError):
    pass


class DivisionByZero(CyclomodError, ZeroDivisionError):
    pass


class ZeroPolynomial(CyclomodError, ValueError):
    pass


class ConstantPolynomial(CyclomodError, ValueError):
    pass


class NotPrime(CyclomodError, ValueError):
    pass


class ModulusMismatch(CyclomodError, ValueError):
    pass


# abelian / cyclotomic
class NonMonic(CyclomodError, ValueError):
    pass


class EqualIndices(CyclomodError, ValueError):
    pass


class PDividesD(CyclomodError, ValueError):
    pass


class NotCoprime(CyclomodError, ValueError):
    pass


class StructureError(CyclomodError, ArithmeticError):
    """A computed ring does not fit any of the expected shapes."""


# crt
class InfiniteQuotient(CyclomodError, ValueError):
    pass


class ConditionAViolated(CyclomodError, ValueError):
    pass


class ConditionBViolated(CyclomodError, ValueError):
    pass


# covering / intersection
class InvalidBranchData(CyclomodError, ValueError):
    pass


class NonIntegralGenus(InvalidBranchData):
    pass


class NotFullyRamified(CyclomodError, ValueError):
    pass


class PreconditionTwoFull(CyclomodError, ValueError):
    pass


class PreconditionOneFull(CyclomodError, ValueError):
    pass


class NotDividing(CyclomodError, ValueError):
    pass


class WordShapeViolation(CyclomodError, ArithmeticError):
    pass


# bdf
class MalformedDatum(CyclomodError, ValueError):
    pass


class BudgetExceeded(CyclomodError, RuntimeError):
    def __init__(self, order, budget):
        super().__init__(f"ambient group order {order} exceeds budget {budget}")
        self.order = order
        self.budget = budget


class OddRank(CyclomodError, ValueError):
    pass
