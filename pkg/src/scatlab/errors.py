"""Exception hierarchy shared by every scatlab module."""


class ScatError(Exception):
    """Base class for all scatlab errors."""


class NotSkewSymmetrizable(ScatError):
    pass


class IndexOutOfRange(ScatError, IndexError):
    pass


class UnfrozenOnly(ScatError, ValueError):
    pass


class BudgetExceeded(ScatError):
    """A bounded search ran out of budget before it could decide."""


class OrderMismatch(ScatError, ValueError):
    pass


class NotInvertible(ScatError, ZeroDivisionError):
    pass


class ExponentLeavesCone(ScatError, ValueError):
    pass


class NotPrimitive(ScatError, ValueError):
    pass


class NotInNPlus(ScatError, ValueError):
    pass


class NotGeneric(ScatError):
    """A path meets a joint, a relative wall boundary, or runs inside a wall."""

    def __init__(self, message, wall=None, segment=None):
        super().__init__(message)
        self.wall = wall
        self.segment = segment


class EndpointOnSupport(ScatError, ValueError):
    pass


class NotGeneral(ScatError, ValueError):
    pass


class Inconsistent(ScatError):
    pass


class NotRank2(ScatError, ValueError):
    pass


class NotMinimalSupport(ScatError, ValueError):
    pass


class RankUnsupported(ScatError, ValueError):
    pass


class NotInChamberFan(ScatError, ValueError):
    pass


class NonGenericEndpoint(ScatError, ValueError):
    pass


class ZeroExponent(ScatError, ValueError):
    pass


class ParseError(ScatError, ValueError):
    pass
