"""Exception hierarchy shared by all skewres modules."""


class SkewresError(Exception):
    """Base class for all errors raised by this package."""


class AxiomViolation(SkewresError):
    """A (sigma, delta) pair failed validation on a sampled witness pair."""

    def __init__(self, which: str, witness, detail: str = ""):
        self.which = which
        self.witness = witness
        msg = f"{which} axiom violated at witness {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class IncompatibleSpec(SkewresError):
    """Sigma or delta spec is not applicable to the given coefficient ring."""


class NoInverse(SkewresError):
    """Operation requires sigma to be an automorphism, but it is not."""


class DivisionByZero(SkewresError, ZeroDivisionError):
    """Inversion or division by a zero element/polynomial."""


class CtxMismatch(SkewresError):
    """Operands belong to different ring contexts."""


class TooLarge(SkewresError):
    """Combinatorial guard tripped (enumeration or Leibniz expansion)."""


class NonCommutativeRing(SkewresError):
    """Operation is only defined over commutative coefficient fields."""


class SingularMatrix(SkewresError):
    """Linear solve against a singular matrix."""


class ZeroResultant(SkewresError):
    """Bezout-by-resultant requested for a pair with vanishing resultant."""


class UnsupportedRing(SkewresError):
    """Operation restricted to a ring family that does not match."""


class ParseError(SkewresError):
    """Syntax error in an element, polynomial, matrix or ring spec string."""

    def __init__(self, message: str, pos: int, expected: str = ""):
        self.pos = pos
        self.expected = expected
        full = f"{message} at position {pos}"
        if expected:
            full += f" (expected {expected})"
        super().__init__(full)
