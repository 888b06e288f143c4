"""Exceptions raised by sidcodes."""


class SidCodesError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SidCodesError, ValueError):
    """m or n is outside the range the operation supports."""


class VertexRangeError(SidCodesError, IndexError):
    pass


class TopologyError(SidCodesError):
    """An operation was called on the wrong kind of product graph."""


class ConstructionRangeError(DimensionError):
    pass


class BoundsRangeError(DimensionError):
    pass


class InfeasibleError(SidCodesError):
    """The graph admits no code of the requested kind."""


class BudgetExceededError(SidCodesError):
    """The search stopped before it could certify its answer."""


class CodeFileError(SidCodesError, ValueError):
    pass
