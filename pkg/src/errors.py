"""Exception hierarchy shared by every tatecoh module."""


class TatecohError(Exception):
    """Base class for all engine errors."""


class MixedFields(TatecohError):
    """Operands live over different coefficient fields."""


class DivisionByZero(TatecohError, ZeroDivisionError):
    """Inverse of zero requested."""


class NoPrimitiveRoot(TatecohError):
    """The field has no primitive root of unity of the requested order."""


class BadCharacteristic(TatecohError):
    """The field characteristic violates a construction hypothesis."""


class ShapeMismatch(TatecohError):
    """Matrix or vector shapes do not compose."""


class NotInvertible(TatecohError):
    """A square matrix is singular."""


class NoSolution(TatecohError):
    """A linear system is inconsistent."""


class NotEigenvector(TatecohError):
    """a·t is not a scalar multiple of the integral t."""


class NotAutomorphism(TatecohError):
    """A computed map fails to be an algebra automorphism."""


class DegenerateForm(TatecohError):
    """A bilinear form expected to be nondegenerate is singular."""


class RadicalVerificationFailed(TatecohError):
    """The candidate Jacobson radical failed ideal, nilpotency or quotient checks."""


class NotSplitCommutative(TatecohError):
    """A/J is not split commutative, so the minimal engine cannot build PIMs."""


class NotSelfInjective(TatecohError):
    """No nondegenerate Frobenius functional could be found for the algebra."""


class IsoUndecided(TatecohError):
    """Isomorphism search hit its retry bound without a certificate."""


class ExactnessFailure(TatecohError):
    """A complex fails d∘d = 0 or exactness at some degree."""

    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"complex is not exact at degree {degree}")


class DegreeOutsideWindow(TatecohError):
    """A degree lies outside the safe window of a complete resolution."""


class ParseError(TatecohError):
    """Malformed input text or JSON."""


class ValidationFailed(TatecohError):
    """An algebra, Hopf or module axiom is violated."""


class MismatchError(TatecohError):
    """A cross-check between two computations disagreed."""


class DimensionNotOne(UserWarning):
    """An integral space does not have dimension one (bad Hopf data)."""
