"""Exception types shared across the package."""


class CfrowError(Exception):
    """Base class for all package errors."""


class ZeroDeterminant(CfrowError):
    pass


class IndexBeyondExpansion(CfrowError):
    pass


class BadRange(CfrowError):
    pass


class SingularPrefix(CfrowError):
    pass


class NotSingularisable(CfrowError):
    def __init__(self, position, reason=""):
        self.position = position
        super().__init__(f"cannot singularise at position {position}: {reason}")


class AdjacentPositions(CfrowError):
    pass


class NotContractable(CfrowError):
    def __init__(self, m, n):
        self.m = m
        self.n = n
        super().__init__(f"denominator of partial block [{m},{n}] vanishes")


class OutOfDomain(CfrowError):
    pass


class ZeroInput(CfrowError):
    """Orbit terminated: the map fixes 0."""


class CapExceeded(CfrowError):
    pass


class BackwardCapExceeded(CfrowError):
    pass


class BoundaryUndecidable(CfrowError):
    """Enclosure refinement budget exhausted on a membership test."""


class InvalidSingularisationArea(CfrowError):
    def __init__(self, condition, detail=""):
        self.condition = condition
        super().__init__(f"singularisation area violates condition ({condition}): {detail}")


class MismatchAt(CfrowError):
    def __init__(self, k, detail=""):
        self.k = k
        super().__init__(f"convergent verification failed at index {k}: {detail}")


class NonIntegrable(CfrowError):
    pass


class NullSetPoint(CfrowError):
    pass


class FixedRay(CfrowError):
    pass
