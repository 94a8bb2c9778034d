"""Exception hierarchy.

Every error raised for bad input derives from :class:`TruncNetError`, which is
itself a ``ValueError`` so that sklearn-style callers catching ``ValueError``
keep working.
"""


class TruncNetError(ValueError):
    """Base class for all package errors."""


class DimensionMismatch(TruncNetError):
    pass


class RankDeficient(TruncNetError):
    """A matrix that must have full rank does not, under the rank tolerance."""


class OverrideInconsistent(TruncNetError):
    pass


class UnsupportedArchitecture(TruncNetError):
    """Layer widths or ranks fall outside the patterns the truncation route covers."""


class DegenerateEdges(TruncNetError):
    pass


class NotFullCone(TruncNetError):
    pass


class DegenerateSimplex(TruncNetError):
    pass


class EmptyClass(TruncNetError):
    pass


class Class1OutsideCone(TruncNetError):
    pass


class Class2InsideCone(TruncNetError):
    pass


class Class1OutsideSimplex(TruncNetError):
    pass


class Class2InsideSimplex(TruncNetError):
    pass


class DegenerateLabels(TruncNetError):
    pass


class CoincidentPoints(TruncNetError):
    pass


class BadRadii(TruncNetError):
    pass


class BadParams(TruncNetError):
    pass


class UnsupportedDim(TruncNetError):
    pass
