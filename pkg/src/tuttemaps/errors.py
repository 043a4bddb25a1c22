"""Exception types raised by map operations."""


class MapError(ValueError):
    """Base class for all structural errors on maps."""


class FixedPoint(MapError):
    """An involution sends a cross to itself."""

    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"involution has fixed point at cross {cross}")


class NotInvolution(MapError):
    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"mapping is not self-inverse at cross {cross}")


class OutOfRange(MapError):
    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"cross {cross} outside the cross set")


class DuplicatePair(MapError):
    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"cross {cross} listed in more than one pair")


class EdgeOutOfRange(MapError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge index {edge} out of range")


class VertexNotIsolatedAfterDeletion(MapError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is not isolated after deleting the edge set")


class SameCross(MapError):
    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"riffle needs two distinct crosses, got {cross} twice")


class IneligibleGluing(MapError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(f"vertex gluing ineligible: {reason}")


class NotDuplicate(MapError):
    def __init__(self, cross):
        self.cross = cross
        super().__init__(f"cross {cross} does not witness a duplicate pair")


class NotCoincidentVertex(MapError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"crosses {a}, {b} are not coincident with one vertex")


class NotACircuit(MapError):
    pass


class SelfIntersecting(MapError):
    pass


class NotSeparating(MapError):
    pass


class StepIneligible(MapError):
    def __init__(self, index, reason):
        self.index = index
        self.reason = reason
        super().__init__(f"gluing step {index} ineligible: {reason}")


class SgMismatch(MapError):
    pass


class EndpointMismatch(MapError):
    pass


class PreconditionsUnmet(MapError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"collapse precondition unmet: {which}")


class SizeBoundExceeded(MapError):
    pass


class BadSpec(MapError):
    pass


class FormatError(MapError):
    """Malformed CMAP text or JSON payload."""
