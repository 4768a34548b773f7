"""Exception taxonomy shared across the package."""


class MomentRingError(Exception):
    """Base class for all errors raised by this package."""


class MalformedScalarError(MomentRingError):
    """Zero denominator, mismatched coefficient fields, or similar."""


class ScalarDomainError(MomentRingError):
    """An operation was asked of a scalar outside its domain (e.g. ord of 0)."""


class CharacteristicConfigError(MomentRingError):
    """The characteristic of the coefficient field does not fit the request."""


class WrongModeError(MomentRingError):
    """A characteristic-p verification was requested over the rationals (or
    vice versa); use the pipeline for the other characteristic."""


class NotPIntegralError(MomentRingError):
    """Bracket reduction of a scalar with negative p-adic valuation."""


class ReductionSingularError(MomentRingError):
    """Bracket reduction would divide by a denominator vanishing mod p."""


class EvaluationPoleError(MomentRingError):
    """A rational function was evaluated at a zero of its denominator."""


class ExactDivisionError(MomentRingError):
    """Polynomial division that was promised to be exact left a remainder."""


class MissingFaceError(MomentRingError):
    """A vertex set that is not a face of the complex was supplied."""


class NotACycleError(MomentRingError):
    """The supplied chain has a nonzero boundary."""


class DegenerateCycleError(MomentRingError):
    """The degree pairing vanishes identically in top degree."""


class DimensionMismatchError(MomentRingError):
    """Cardinality or codimension constraints were violated."""


class DegreeRangeError(MomentRingError):
    """A graded degree outside the constructed or admissible range."""


class NoDualFaceError(MomentRingError):
    """No complementary face pairs nontrivially with the given element."""


class PartitionError(MomentRingError):
    """A facet partition with inadmissible block sizes."""


class TorsionError(MomentRingError):
    """Graded dimensions over F_p and over Q disagree, so no basis lifts."""


class HypothesisFailureError(MomentRingError):
    """The input complex is not a homology sphere over a required prime.

    Carries the prime and the face whose link has the wrong homology."""

    def __init__(self, message, p=None, face=None, homology=None):
        super().__init__(message)
        self.p = p
        self.face = face
        self.homology = homology


class DegenerateRhoError(MomentRingError):
    """A numeric general-position vector collided with a parameter value."""


class ParseError(MomentRingError):
    """Malformed batch input file."""


class InternalConsistencyError(MomentRingError):
    """An invariant that should hold mathematically failed; report a bug."""


class ConditionStarWarning(UserWarning):
    """The link condition behind the annihilator description is not known to
    hold; results describe the kernel but the non-face span may differ."""
