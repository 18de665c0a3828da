"""Exception hierarchy for orthokit.

``ShapeError`` covers malformed or mismatched inputs; ``NumericalError``
subclasses signal that a computation failed on mathematically valid input
(rank deficiency, loss of positive definiteness, non-convergence).
"""


class LinAlgError(Exception):
    """Base class for all orthokit errors."""


class ShapeError(LinAlgError, ValueError):
    """Input has the wrong shape, or shapes of operands do not match."""


class CsvFormatError(LinAlgError, ValueError):
    """A CSV matrix file could not be parsed; message carries line/column."""


class NumericalError(LinAlgError):
    """A numerical failure on structurally valid input."""


class SingularTriangularError(NumericalError):
    """Triangular solve hit a zero (or near-zero) pivot."""

    def __init__(self, index, pivot, tol):
        self.index = index
        self.pivot = pivot
        super().__init__(
            f"triangular matrix is singular: |diag[{index}]| = {abs(pivot):.3e} <= {tol:.3e}"
        )


class NotPositiveDefiniteError(NumericalError):
    """Cholesky factorization found a non-positive pivot."""

    def __init__(self, index, pivot):
        self.index = index
        self.pivot = pivot
        super().__init__(f"matrix is not positive definite: pivot {pivot:.3e} at index {index}")


class RankDeficiencyError(NumericalError):
    """A full-rank-only solver was given a (numerically) rank-deficient matrix."""


class SingularMatrixError(NumericalError):
    """Operation requires a nonsingular (or nonzero) matrix."""


class ConvergenceError(NumericalError):
    """Iteration failed to converge; ``partial`` carries the best result so far."""

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)
