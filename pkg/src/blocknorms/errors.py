"""Exception hierarchy shared by every module."""


class BlockMatrixError(Exception):
    """Base class for all errors raised by blocknorms."""


class DimensionMismatch(BlockMatrixError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class BlocksNotSquareEqual(DimensionMismatch):
    """Operation needs n == m (blocks of the same size)."""


class LengthMismatch(DimensionMismatch):
    pass


class HermitianResidueTooLarge(BlockMatrixError, ValueError):
    pass


class NotPsd(BlockMatrixError, ValueError):
    pass


class NotPd(NotPsd):
    pass


class BNotInvertible(BlockMatrixError, ValueError):
    pass


class CommutationViolated(BlockMatrixError, ValueError):
    pass


class NegativeD(BlockMatrixError, ValueError):
    pass


class InvalidP(BlockMatrixError, ValueError):
    pass


class PreconditionViolated(BlockMatrixError, ValueError):
    pass


class PreconditionIXNotDefinite(PreconditionViolated):
    pass


class NumericalFailure(BlockMatrixError, ArithmeticError):
    """A LAPACK routine failed or a result violated its own post-condition."""


class EigensolverFailure(NumericalFailure):
    pass


class SvdFailure(NumericalFailure):
    pass


class UnitaryRecoveryFailure(NumericalFailure):
    pass


class SearchExhausted(BlockMatrixError, RuntimeError):
    pass


class LMaxExceeded(SearchExhausted):
    pass


class TMaxExceeded(SearchExhausted):
    pass


class UnknownSuite(BlockMatrixError, ValueError):
    pass
