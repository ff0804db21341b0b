"""Exception hierarchy for the ghilb package."""


class GHilbError(Exception):
    """Base class for every error raised by ghilb."""


class InvalidActionError(GHilbError, ValueError):
    """The pair (r, a) does not describe a usable group action."""


class UnitWeightError(InvalidActionError):
    """a or r - a equals 1; the structured algorithm does not cover this case."""


class DegenerateConeError(GHilbError, ValueError):
    """Generators do not span a full-dimensional pointed cone."""


class NotAGSet(GHilbError, ValueError):
    def __init__(self, message, weight=None):
        super().__init__(message)
        self.weight = weight


class MixedYZ(GHilbError, ValueError):
    """A spanning monomial is divisible by yz."""


class IllegalDirection(GHilbError, ValueError):
    pass


class DegenerateWall(GHilbError, ValueError):
    """The wall lies on a coordinate plane (v = 1), so no neighbour exists."""


class DominationFailure(GHilbError, RuntimeError):
    pass


class ChainBroken(GHilbError, RuntimeError):
    pass


class FanConstructionError(GHilbError, RuntimeError):
    """Internal inconsistency while assembling the fan."""
