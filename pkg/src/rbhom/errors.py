"""Exception hierarchy."""


class RBHomError(Exception):
    pass


# arithmetic

class DegreeCapError(RBHomError, ArithmeticError):
    """Polynomial degree exceeded the resource cap."""


class ScalarZeroDivisionError(RBHomError, ZeroDivisionError):
    pass


class PoleError(RBHomError, ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class ScalarParseError(RBHomError, ValueError):
    def __init__(self, expected: str, found: str, position: int):
        self.expected = expected
        self.found = found
        self.position = position
        super().__init__(f"expected {expected}, found {found!r} at offset {position}")


# structural

class ShapeError(RBHomError, ValueError):
    pass


class SemigroupMismatchError(RBHomError, ValueError):
    pass


class RankDeficiencyError(RBHomError, ValueError):
    pass


class NotSubalgebraError(RBHomError, ValueError):
    pass


class NotARetractionError(RBHomError, ValueError):
    pass


class NotADirectSumError(RBHomError, ValueError):
    pass


# validation preconditions

class InvalidBaseError(RBHomError, ValueError):
    """The base algebra does not satisfy its axioms."""


class InvalidDatumError(RBHomError, ValueError):
    pass


class InvalidPairError(RBHomError, ValueError):
    pass


class InvalidComplementError(RBHomError, ValueError):
    pass


class InvalidDeformationError(RBHomError, ValueError):
    pass


class ConstraintError(RBHomError, ValueError):
    """A parameter assignment violates a row constraint."""


class GridTooLargeError(RBHomError, ValueError):
    pass


class UnsupportedError(RBHomError, NotImplementedError):
    pass


class InternalConsistencyError(RBHomError, AssertionError):
    """Two independent routes to the same fact disagreed."""


class BaseMismatchError(RBHomError, ValueError):
    """Two objects that must share a base algebra do not."""
