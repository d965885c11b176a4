"""Exception hierarchy shared by every module."""


class DivSchurError(Exception):
    """Base class for all library errors."""


# funcs
class InsufficientDerivatives(DivSchurError):
    pass


class OrderMismatch(DivSchurError):
    pass


# schatten
class NumericalFailure(DivSchurError):
    pass


class IndexOutOfRange(DivSchurError):
    pass


class RegimeError(DivSchurError):
    """An exponent tuple lies outside the regime an operation supports."""


# schur
class GridMismatch(DivSchurError):
    pass


class ArityMismatch(DivSchurError):
    pass


class ResolutionTooLow(DivSchurError):
    pass


# torus
class DimensionMismatch(DivSchurError):
    pass


class PoleAtOne(DivSchurError):
    pass


class NodeCoincidence(DivSchurError):
    pass


# wavelet
class UnsupportedOrder(DivSchurError):
    pass


class NonConvergence(DivSchurError):
    pass


class ResolutionInsufficient(DivSchurError):
    pass


class SeriesDivergence(DivSchurError):
    pass


class InsufficientRegularity(DivSchurError):
    pass


# cli
class ConfigInvalid(DivSchurError):
    pass


class IoFailure(DivSchurError):
    pass
