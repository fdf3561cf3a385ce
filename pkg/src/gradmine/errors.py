"""Exception types raised across the package.

Every user/data error derives from :class:`GradMineError`; the CLI maps those
to exit code 1 and anything else to exit code 2.
"""


class GradMineError(Exception):
    """Base class for recoverable user or data errors."""


class ParseError(GradMineError):
    def __init__(self, row, col, cell):
        self.row = row
        self.col = col
        self.cell = cell
        super().__init__(f"row {row}, column {col}: cannot parse {cell!r} as a number")


class EmptyDataset(GradMineError):
    pass


class DuplicateAttribute(GradMineError):
    pass


class IndexOutOfRange(GradMineError, IndexError):
    pass


class TooFewValues(GradMineError):
    pass


class ZeroMean(GradMineError):
    pass


class NegativeThreshold(GradMineError):
    pass


class MissingUserThreshold(GradMineError):
    pass


class NegativeSigma(GradMineError):
    pass


class DimensionMismatch(GradMineError):
    pass


class CycleDetected(GradMineError):
    pass


class NotTemporal(GradMineError):
    pass


class UnsupportedFilter(GradMineError):
    pass


class TooLarge(GradMineError):
    pass


class InvalidParameter(GradMineError):
    pass
