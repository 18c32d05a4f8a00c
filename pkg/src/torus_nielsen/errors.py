"""Exceptions raised by torus_nielsen.

Input and precondition problems derive from :class:`TorusNielsenError`
(a :class:`ValueError`); broken internal postconditions raise
:class:`InvariantViolation`.
"""


class TorusNielsenError(ValueError):
    """Base class for rejected inputs and unmet preconditions."""


class NonSquare(TorusNielsenError):
    pass


class DimensionMismatch(TorusNielsenError):
    pass


class NonPrimitiveVector(TorusNielsenError):
    pass


class ZeroVector(TorusNielsenError):
    pass


class NotUnimodular(TorusNielsenError):
    pass


class NotACycle(TorusNielsenError):
    pass


class RankPrecondition(TorusNielsenError):
    pass


class NotReducedBasis(TorusNielsenError):
    pass


class ReductionIncomplete(TorusNielsenError):
    """A cycle left residue outside the u1 ⊗ D normal form."""


class ClassicalNonzero(TorusNielsenError):
    pass


class ResolutionTooCoarse(TorusNielsenError):
    pass


class UnsupportedDimension(TorusNielsenError):
    pass


class MalformedInput(TorusNielsenError):
    """A document failed to parse or validate.

    ``expected`` holds the schema-side description of what was wanted.
    """

    def __init__(self, message: str, expected: str = ""):
        super().__init__(message)
        self.expected = expected


class InvariantViolation(RuntimeError):
    pass
