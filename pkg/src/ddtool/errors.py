"""Exception types shared across the package.

Every error carries a distinct process exit code so the command line tool can
fail in a machine-checkable way.  Exit code 1 is reserved for unexpected
crashes, 2 for argparse usage errors; everything here starts at 10.
"""


class DdtoolError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(DdtoolError):
    """A table file could not be parsed; message includes line/column."""

    exit_code = 10


class DuplicateId(DdtoolError):
    """A row or column identifier occurs more than once."""

    exit_code = 11


class NonIntegerCount(DdtoolError):
    """A counts table entry is not a nonnegative integer."""

    exit_code = 12


class NonFiniteValue(DdtoolError):
    """A NaN or infinity reached a public constructor."""

    exit_code = 13


class NonSquare(DdtoolError):
    """A square matrix was required."""

    exit_code = 14


class NotSymmetric(DdtoolError):
    """Symmetry violated beyond the relative tolerance."""

    exit_code = 15


class NotPositiveDefinite(DdtoolError):
    """A metric matrix has an eigenvalue at or below the definiteness cutoff."""

    exit_code = 16


class ConvergenceFailure(DdtoolError):
    """The underlying eigenvalue/SVD routine failed to converge."""

    exit_code = 17


class DimensionMismatch(DdtoolError):
    """Shapes of the supplied arrays are incompatible."""

    exit_code = 18


class RankMismatch(DdtoolError):
    """An operation needed at least one retained eigenvalue and found none."""

    exit_code = 19


class ZeroVarianceColumn(DdtoolError):
    """Standardization hit a column with (weighted) variance at zero."""

    exit_code = 20


class BadWeights(DdtoolError):
    """Row weights are nonpositive or do not sum to one."""

    exit_code = 21


class DegenerateTable(DdtoolError):
    """A contingency table has fewer than two usable rows or columns."""

    exit_code = 22


class SingularSxx(DdtoolError):
    """The explanatory cross-product matrix is singular or too ill-conditioned."""

    exit_code = 23


class RankExceeded(DdtoolError):
    """A requested component count exceeds the available rank."""

    exit_code = 24


class EigengapViolation(DdtoolError):
    """A truncation point falls inside an eigenvalue tie."""

    exit_code = 25


class ZeroOperator(DdtoolError):
    """A similarity coefficient was asked for a zero operator."""

    exit_code = 26


class PerronAmbiguity(DdtoolError):
    """The leading eigenvalue of a similarity matrix is not simple."""

    exit_code = 27


class UsageError(DdtoolError):
    """The analysis configuration is inconsistent (arity, missing options)."""

    exit_code = 28
