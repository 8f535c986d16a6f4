"""Exception hierarchy shared by every module."""


class AtacError(ValueError):
    """Base class for domain errors (CLI exit status 1)."""


class DesignError(AtacError):
    pass


class EmptyPointSet(DesignError):
    pass


class DuplicatePoint(DesignError):
    def __init__(self, label):
        super().__init__(f"duplicate point label {label!r}")
        self.label = label


class UnknownPoint(DesignError):
    def __init__(self, block_index, label):
        super().__init__(f"block {block_index} references unknown point {label!r}")
        self.block_index = block_index
        self.label = label


class EmptyBlock(DesignError):
    def __init__(self, block_index):
        super().__init__(f"block {block_index} is empty")
        self.block_index = block_index


class UncoveredPair(DesignError):
    def __init__(self, x, y):
        super().__init__(f"pair ({x}, {y}) is not covered by any block")
        self.pair = (x, y)


class MissingWeight(DesignError):
    def __init__(self, point):
        super().__init__(f"no weight given for point {point!r}")
        self.point = point


class InvalidWeighting(DesignError):
    pass


class AllPointsRemoved(DesignError):
    pass


class TooFewBlocksRequested(DesignError):
    pass


class CoverageViolated(AtacError):
    def __init__(self, point, coverage):
        super().__init__(f"point {point!r} is covered only to level {coverage}")
        self.point = point
        self.coverage = coverage


class CertificateError(AtacError):
    pass


class ConstructionError(AtacError):
    pass


class NotPrimePower(ConstructionError):
    def __init__(self, q):
        super().__init__(f"{q} is not a prime power")
        self.q = q


class SearchError(AtacError):
    pass


class BudgetExceeded(SearchError):
    pass
