"""Exception hierarchy shared by all unimap modules."""


class MapError(ValueError):
    """Base class for all structural errors raised by this package."""


class LengthMismatch(MapError):
    pass


class NotInvolution(MapError):
    pass


class NotConnected(MapError):
    pass


class NotUnicellular(MapError):
    pass


class UnknownVertex(MapError):
    pass


class HalfEdgeNotOnVertex(MapError):
    pass


class EmptyCutSet(MapError):
    pass


class SameVertex(MapError):
    pass


class DuplicateHalfEdge(MapError):
    pass


class GenusZero(MapError):
    pass


class InconsistentDecomposition(MapError):
    pass


class NotDominant(MapError):
    pass


class NotCanonical(MapError):
    pass


class NotIntertwined(MapError):
    pass


class InvalidSequence(MapError):
    pass


class TooFewMarks(MapError):
    pass


class Singular(MapError):
    pass


class MissingLabel(MapError):
    pass


class UnequalTripleLabels(MapError):
    pass


class OrderTooLarge(MapError):
    pass


class GenusOutOfRange(MapError):
    pass


class ResourceBound(MapError):
    pass


class OutOfRange(MapError):
    pass


class EmptyClass(MapError):
    pass
