"""Dense matrix/vector substrate: validation, arithmetic, norms, triangular
solves, Cholesky, and the CSV interchange format.

Matrices are 2-D row-major float64 numpy arrays; vectors are 1-D float64
arrays.  Public operations never mutate their inputs and never alias an
input in their output.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CsvFormatError,
    NotPositiveDefiniteError,
    ShapeError,
    SingularTriangularError,
)

__all__ = [
    "as_matrix",
    "as_vector",
    "mat_mul",
    "transpose",
    "norm",
    "back_sub",
    "forward_sub",
    "cholesky",
    "read_matrix_csv",
    "parse_matrix_csv",
    "write_matrix_csv",
    "read_vector_csv",
]

# Relative scale below which a triangular pivot counts as zero.
TRIANGULAR_PIVOT_RTOL = 1e-14


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a fresh 2-D row-major float64 array.

    Rejects empty shapes and non-finite entries; this is the validation
    gate for all externally supplied matrix data.
    """
    m = np.array(a, dtype=float, order="C")
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got array of ndim {m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def as_vector(b) -> np.ndarray:
    """Coerce ``b`` to a fresh 1-D float64 array with finite entries."""
    v = np.array(b, dtype=float)
    if v.ndim != 1:
        raise ShapeError(f"expected a 1-D vector, got array of ndim {v.ndim}")
    if v.size < 1:
        raise ShapeError("vector length must be positive")
    if not np.isfinite(v).all():
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return v


def mat_mul(a, b) -> np.ndarray:
    """Matrix product ``a @ b`` with eager shape validation."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def transpose(a) -> np.ndarray:
    a = as_matrix(a)
    return np.ascontiguousarray(a.T)


def norm(a, kind: str = "frobenius") -> float:
    """Matrix norm: ``frobenius``, ``inf`` (max abs row sum) or ``one``
    (max abs column sum)."""
    a = as_matrix(a)
    if kind == "frobenius":
        return float(np.sqrt((a * a).sum()))
    if kind == "inf":
        return float(np.abs(a).sum(axis=1).max())
    if kind == "one":
        return float(np.abs(a).sum(axis=0).max())
    raise ValueError(f"unknown norm kind {kind!r}; expected frobenius, inf or one")


def _check_square_system(a, b, what):
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{what} solve needs a square matrix, got {a.shape}")
    if b.size != a.shape[0]:
        raise ShapeError(f"right-hand side length {b.size} does not match matrix {a.shape}")


def _check_pivots(diag, scale):
    tol = TRIANGULAR_PIVOT_RTOL * scale
    small = np.abs(diag) <= tol
    if small.any():
        i = int(np.argmax(small))
        raise SingularTriangularError(i, diag[i], tol)


def back_sub(u, b) -> np.ndarray:
    """Solve the upper-triangular system ``U x = b``.

    Only the upper triangle of ``u`` is read.  Pivots within
    ``1e-14 * norm(U, inf)`` of zero raise ``SingularTriangularError``.
    """
    u = as_matrix(u)
    b = as_vector(b)
    _check_square_system(u, b, "back substitution")
    n = u.shape[0]
    _check_pivots(np.diagonal(u), norm(u, "inf"))
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - u[i, i + 1 :] @ x[i + 1 :]) / u[i, i]
    return x


def forward_sub(l, b) -> np.ndarray:
    """Solve the lower-triangular system ``L x = b`` (mirror of back_sub)."""
    l = as_matrix(l)
    b = as_vector(b)
    _check_square_system(l, b, "forward substitution")
    n = l.shape[0]
    _check_pivots(np.diagonal(l), norm(l, "inf"))
    x = np.zeros(n)
    for i in range(n):
        x[i] = (b[i] - l[i, :i] @ x[:i]) / l[i, i]
    return x


def cholesky(s) -> np.ndarray:
    """Factor a symmetric positive definite ``S`` as ``L @ L.T``.

    Raises ``NotPositiveDefiniteError`` with the failing pivot index when a
    diagonal pivot is not strictly positive, and ``ShapeError`` when ``S``
    is not symmetric to ``1e-12 * norm(S, inf)``.
    """
    s = as_matrix(s)
    n = s.shape[0]
    if n != s.shape[1]:
        raise ShapeError(f"cholesky needs a square matrix, got {s.shape}")
    sym_tol = 1e-12 * norm(s, "inf")
    if np.abs(s - s.T).max() > sym_tol:
        raise ShapeError("cholesky needs a symmetric matrix")
    l = np.zeros((n, n))
    for j in range(n):
        d = s[j, j] - l[j, :j] @ l[j, :j]
        if d <= 0.0:
            raise NotPositiveDefiniteError(j, d)
        l[j, j] = np.sqrt(d)
        if j + 1 < n:
            l[j + 1 :, j] = (s[j + 1 :, j] - l[j + 1 :, :j] @ l[j, :j]) / l[j, j]
    return l


# ---------------------------------------------------------------------------
# CSV interchange: plain decimal fields, one matrix row per line, no header.


def parse_matrix_csv(text: str, source: str = "<string>") -> np.ndarray:
    rows = []
    width = None
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        if raw.strip() == "":
            continue
        fields = raw.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise CsvFormatError(
                f"{source}: line {lineno}: expected {width} fields, found {len(fields)}"
            )
        row = []
        for col, field in enumerate(fields, start=1):
            try:
                row.append(float(field))
            except ValueError:
                raise CsvFormatError(
                    f"{source}: line {lineno}, column {col}: not a number: {field.strip()!r}"
                ) from None
        rows.append(row)
    if not rows:
        raise CsvFormatError(f"{source}: no data rows")
    return as_matrix(rows)


def read_matrix_csv(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as f:
        return parse_matrix_csv(f.read(), source=str(path))


def read_vector_csv(path) -> np.ndarray:
    """Read a vector stored as a single CSV column (or a single row)."""
    m = read_matrix_csv(path)
    if m.shape[1] == 1:
        return m[:, 0].copy()
    if m.shape[0] == 1:
        return m[0, :].copy()
    raise ShapeError(f"{path}: expected a single row or column, got shape {m.shape}")


def write_matrix_csv(a, path, precision: int = 17) -> None:
    """Write ``a`` in the CSV interchange format.

    ``precision`` counts significant digits; 17 round-trips float64 exactly.
    """
    a = as_matrix(a)
    with open(path, "w", encoding="utf-8") as f:
        for row in a:
            f.write(",".join(f"{v:.{precision}g}" for v in row))
            f.write("\n")
