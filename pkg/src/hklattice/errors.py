"""Exception hierarchy.

``InputError`` covers malformed or invariant-violating input (CLI exit code 2);
every other ``LatticeError`` is a domain error (CLI exit code 1).
"""


class LatticeError(Exception):
    pass


class InputError(LatticeError):
    pass


class ValidationError(InputError):
    pass


class ParseError(InputError):
    pass


class NonSymmetric(ValidationError):
    pass


class EmptyMatrix(ValidationError):
    pass


class LatticeMismatch(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class ZeroTwist(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class EmptyComplement(LatticeError):
    pass


class ZeroVector(LatticeError):
    pass


class SignatureTooSmall(LatticeError):
    pass


class NonPositiveSquare(LatticeError):
    pass


class IndefiniteLattice(LatticeError):
    pass


class NegativeTargetInDefinite(LatticeError):
    pass


class WrongRank(LatticeError):
    pass


class NotFound(LatticeError):
    pass


class NotAnIsometry(LatticeError):
    def __init__(self, msg, entry=None):
        super().__init__(msg)
        self.entry = entry


class NotUnimodular(LatticeError):
    pass


class RankLimitExceeded(LatticeError):
    pass


class NotHyperbolic(LatticeError):
    pass


class SeedNotPositive(LatticeError):
    pass


class SeedOnWall(LatticeError):
    pass


class ComponentSwapped(LatticeError):
    pass


class IrrationalBoundary(LatticeError):
    pass


class AlgebraMismatch(LatticeError):
    pass


class BadTwistElement(LatticeError):
    pass


class DegenerateForm(LatticeError):
    pass


class B2TooSmall(LatticeError):
    pass


class NoOrthogonalPair(LatticeError):
    pass


class IndefiniteTarget(LatticeError):
    pass


class SourceTooBig(LatticeError):
    pass
