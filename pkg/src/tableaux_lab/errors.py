"""Exception hierarchy shared by every module of the package."""


class TableauxLabError(Exception):
    """Base class for all errors raised by tableaux_lab."""


class NonPositiveProbability(TableauxLabError, ValueError):
    pass


class SumNotOne(TableauxLabError, ValueError):
    pass


class InstanceTooLarge(TableauxLabError, ValueError):
    """An exhaustive oracle was asked for more work than its guard allows."""


class BruteForceTooLarge(InstanceTooLarge):
    pass


class ShapeTooLong(TableauxLabError, ValueError):
    pass


class DegenerateSeparation(TableauxLabError, ValueError):
    """Two distinct probabilities are too close for the repeated-variable formula."""


class TailNotNegligible(TableauxLabError, ValueError):
    pass


class BlockMismatch(TableauxLabError, ValueError):
    pass


class NotHermitian(TableauxLabError, ValueError):
    pass


class NoConvergence(TableauxLabError, RuntimeError):
    pass


class EmptySample(TableauxLabError, ValueError):
    pass
