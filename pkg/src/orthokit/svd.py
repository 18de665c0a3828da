"""Two-phase singular value decomposition and everything derived from it.

Phase one reduces A to upper-bidiagonal form with alternating left/right
Householder reflectors; phase two drives the superdiagonal to zero with
implicit-shift QR steps (Wilkinson shift on the trailing 2x2 of B^T B),
deflating whenever a superdiagonal entry passes the convergence test
|e_i| <= eps * (|d_i| + |d_i+1|).

``jacobi_eig`` is a self-contained cyclic Jacobi eigensolver for symmetric
matrices.  It shares no code with the two-phase route and exists as an
independent cross-check (singular values of A are the square roots of the
eigenvalues of A^T A).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ShapeError, SingularMatrixError
from .matrix import as_matrix, as_vector, norm
from .reflectors import HouseholderReflector, givens_params, householder_vector, stable_norm

__all__ = [
    "SvdFactorization",
    "Bidiagonal",
    "bidiagonalize",
    "bidiag_svd",
    "svd",
    "singular_values",
    "jacobi_eig",
    "norm2",
    "cond2",
    "numerical_rank",
    "default_rank_threshold",
    "matrix_rank",
    "pseudoinverse",
    "low_rank",
    "subspace_bases",
    "SubspaceBases",
    "nearest_orthogonal",
    "distance_to_singular",
    "SingularDistance",
]

DEFAULT_T_DIGITS = 12


@dataclass
class SvdFactorization:
    """A = u @ diag(sigma) @ vt with orthonormal u/vt columns and sigma
    sorted nonincreasing.  ``shape`` is "full" (u is m x m, vt is n x n) or
    "reduced" (u is m x k, vt is k x n, k = min(m, n))."""

    u: np.ndarray
    sigma: np.ndarray
    vt: np.ndarray
    shape: str


@dataclass
class Bidiagonal:
    d: np.ndarray
    e: np.ndarray

    def __post_init__(self):
        self.d = as_vector(self.d)
        self.e = np.asarray(self.e, dtype=float)
        if self.e.size != self.d.size - 1:
            raise ShapeError(f"superdiagonal length {self.e.size} != diagonal length {self.d.size} - 1")


def _pad(h: HouseholderReflector, offset: int, length: int) -> HouseholderReflector:
    u = np.zeros(length)
    u[offset:] = h.u
    return HouseholderReflector(u, h.beta)


def bidiagonalize(a):
    """Reduce a tall matrix (m >= n) to upper-bidiagonal form.

    Returns ``(left, Bidiagonal, right)`` where the reflector lists satisfy
    A = (H_0 H_1 ...) * B * (P_0 P_1 ...)^T with B the m x n bidiagonal
    embedding.  Columns/rows that are already in the required form are
    skipped, so an already-bidiagonal input comes back untouched.
    """
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        raise ShapeError(f"bidiagonalize needs m >= n, got {a.shape}; transpose first")
    b = a.copy()
    left: list[HouseholderReflector] = []
    right: list[HouseholderReflector] = []
    for k in range(n):
        x = b[k:, k]
        if np.any(x[1:]):
            h = householder_vector(x)
            alpha = -(1.0 if x[0] >= 0.0 else -1.0) * stable_norm(x)
            block = b[k:, k:]
            block -= h.beta * np.outer(h.u, h.u @ block)
            b[k, k] = alpha
            b[k + 1 :, k] = 0.0
            left.append(_pad(h, k, m))
        if k < n - 2:
            xr = b[k, k + 1 :]
            if np.any(xr[1:]):
                h = householder_vector(xr)
                alpha = -(1.0 if xr[0] >= 0.0 else -1.0) * stable_norm(xr)
                block = b[k:, k + 1 :]
                block -= h.beta * np.outer(block @ h.u, h.u)
                b[k, k + 1] = alpha
                b[k, k + 2 :] = 0.0
                right.append(_pad(h, k + 1, n))
    d = np.diagonal(b).copy()
    e = np.diagonal(b, 1)[: n - 1].copy() if n > 1 else np.zeros(0)
    return left, Bidiagonal(d, e), right


def _rot(f: float, g: float) -> tuple[float, float]:
    # Like givens_params but tolerant of (0, 0); identity in that case.
    if g == 0.0:
        return 1.0, 0.0
    if f == 0.0:
        return 0.0, 1.0
    return givens_params(f, g)


def _rot_cols(m: np.ndarray, j: int, k: int, c: float, s: float) -> None:
    tj = c * m[:, j] + s * m[:, k]
    m[:, k] = -s * m[:, j] + c * m[:, k]
    m[:, j] = tj


def _wilkinson_mu(d, e, lo, hi):
    dm, dn = d[hi - 1], d[hi]
    em = e[hi - 1]
    em1 = e[hi - 2] if hi - 1 > lo else 0.0
    t11 = dm * dm + em1 * em1
    t12 = dm * em
    t22 = dn * dn + em * em
    if t12 == 0.0:
        return t22
    half = 0.5 * (t11 - t22)
    root = math.hypot(half, t12)
    denom = half + (root if half >= 0.0 else -root)
    if denom == 0.0:
        return t22
    # associated as t12 * (t12 / denom): t12^2 alone could underflow
    return t22 - t12 * (t12 / denom)


def _implicit_step(d, e, lo, hi, u, v):
    """One shifted QR step on the unreduced block [lo, hi]; chases the bulge
    down the superdiagonal with alternating right/left rotations."""
    mu = _wilkinson_mu(d, e, lo, hi)
    y = d[lo] * d[lo] - mu
    z = d[lo] * e[lo]
    for k in range(lo, hi):
        c, s = _rot(y, z)
        if k > lo:
            e[k - 1] = c * y + s * z
        dk = c * d[k] + s * e[k]
        ek = -s * d[k] + c * e[k]
        bulge = s * d[k + 1]
        dk1 = c * d[k + 1]
        if v is not None:
            _rot_cols(v, k, k + 1, c, s)
        c2, s2 = _rot(dk, bulge)
        d[k] = c2 * dk + s2 * bulge
        e[k] = c2 * ek + s2 * dk1
        d[k + 1] = -s2 * ek + c2 * dk1
        if k < hi - 1:
            y = e[k]
            z = s2 * e[k + 1]
            e[k + 1] = c2 * e[k + 1]
        if u is not None:
            _rot_cols(u, k, k + 1, c2, s2)


def _deflate_zero_diagonal(d, e, i, hi, u):
    """d[i] = 0 with i < hi: row rotations (i, j) sweep e[i] off to the
    right, zeroing row i entirely."""
    bulge = e[i]
    e[i] = 0.0
    for j in range(i + 1, hi + 1):
        r = math.hypot(d[j], bulge)
        if r == 0.0:
            break
        c = d[j] / r
        s = -bulge / r
        d[j] = r
        if u is not None:
            _rot_cols(u, i, j, c, s)
        if j < hi:
            bulge = s * e[j]
            e[j] = c * e[j]


def _deflate_zero_tail(d, e, lo, hi, v):
    """d[hi] = 0: column rotations (j, hi) sweep e[hi-1] up and out,
    zeroing column hi entirely."""
    bulge = e[hi - 1]
    e[hi - 1] = 0.0
    for j in range(hi - 1, lo - 1, -1):
        r = math.hypot(d[j], bulge)
        if r == 0.0:
            break
        c = d[j] / r
        s = bulge / r
        d[j] = r
        if v is not None:
            _rot_cols(v, j, hi, c, s)
        if j > lo:
            bulge = -s * e[j - 1]
            e[j - 1] = c * e[j - 1]


def _bidiag_svd_arrays(d, e, want_uv: bool, max_sweeps: int | None):
    n = d.size
    if max_sweeps is None:
        max_sweeps = 30 * max(n, 1)
    if max_sweeps < 1:
        raise ValueError(f"max_sweeps must be >= 1, got {max_sweeps}")
    u = np.eye(n) if want_uv else None
    v = np.eye(n) if want_uv else None
    eps = float(np.finfo(float).eps)
    # Exact power-of-two prescaling keeps the squared quantities of the
    # shift computation inside the normal floating-point range.
    top = max(float(np.abs(d).max()), float(np.abs(e).max()) if e.size else 0.0)
    rescale = 2.0 ** np.ceil(np.log2(top)) if top > 0.0 else 1.0
    d /= rescale
    e /= rescale
    sweeps = 0
    while True:
        for i in range(n - 1):
            if abs(e[i]) <= eps * (abs(d[i]) + abs(d[i + 1])):
                e[i] = 0.0
        hi = -1
        for i in range(n - 2, -1, -1):
            if e[i] != 0.0:
                hi = i + 1
                break
        if hi < 0:
            break
        lo = hi - 1
        while lo > 0 and e[lo - 1] != 0.0:
            lo -= 1
        scale = max(np.max(np.abs(d[lo : hi + 1])), np.max(np.abs(e[lo:hi])))
        if abs(d[hi]) <= eps * scale:
            d[hi] = 0.0
            _deflate_zero_tail(d, e, lo, hi, v)
            continue
        zero_i = -1
        for i in range(lo, hi):
            if abs(d[i]) <= eps * scale:
                zero_i = i
                break
        if zero_i >= 0:
            d[zero_i] = 0.0
            _deflate_zero_diagonal(d, e, zero_i, hi, u)
            continue
        sweeps += 1
        if sweeps > max_sweeps:
            raise ConvergenceError(
                f"bidiagonal SVD did not converge within {max_sweeps} sweeps",
                partial=np.sort(np.abs(d))[::-1].copy(),
            )
        _implicit_step(d, e, lo, hi, u, v)
    for i in range(n):
        if d[i] < 0.0:
            d[i] = -d[i]
            if want_uv:
                u[:, i] = -u[:, i]
    d *= rescale
    order = np.argsort(-d, kind="stable")
    d = d[order]
    if want_uv:
        u = u[:, order]
        v = v[:, order]
    return u, d, v


def bidiag_svd(b: Bidiagonal, max_sweeps: int | None = None):
    """Singular values and rotation accumulations of a bidiagonal matrix.

    Returns ``(left, sigma, right)`` with orthogonal n x n ``left``/``right``
    such that B = left @ diag(sigma) @ right.T; sigma is nonnegative and
    sorted descending.  Raises ``ConvergenceError`` (carrying the partial
    spectrum) if the sweep budget is exhausted.
    """
    d = b.d.copy()
    e = np.asarray(b.e, dtype=float).copy()
    u, s, v = _bidiag_svd_arrays(d, e, want_uv=True, max_sweeps=max_sweeps)
    return u, s, v


def _accumulate(reflectors, m: int, cols: int) -> np.ndarray:
    q = np.eye(m, cols)
    for h in reversed(reflectors):
        w = h.u @ q
        q -= h.beta * np.outer(h.u, w)
    return q


def _fix_signs(u: np.ndarray, v: np.ndarray) -> None:
    # Largest-magnitude entry of each right singular vector made positive;
    # the paired left vector flips with it.  Ties resolve to the first index.
    nsig = min(u.shape[1], v.shape[1])
    for j in range(v.shape[1]):
        col = v[:, j]
        i = int(np.argmax(np.abs(col)))
        if col[i] < 0.0:
            v[:, j] = -col
            if j < nsig:
                u[:, j] = -u[:, j]
    for j in range(v.shape[1], u.shape[1]):
        col = u[:, j]
        i = int(np.argmax(np.abs(col)))
        if col[i] < 0.0:
            u[:, j] = -col


def svd(a, shape: str = "reduced", max_sweeps: int | None = None) -> SvdFactorization:
    """Singular value decomposition of any real matrix.

    ``shape`` selects the full (square u, vt) or reduced factors.  Wide
    matrices are handled by factoring the transpose and swapping the roles
    of u and v.  Column signs follow a deterministic convention so repeated
    runs (and golden tests) see identical factors.
    """
    a = as_matrix(a)
    if shape not in ("full", "reduced"):
        raise ValueError(f"shape must be 'full' or 'reduced', got {shape!r}")
    m, n = a.shape
    if m < n:
        f = svd(np.ascontiguousarray(a.T), shape, max_sweeps)
        u = np.ascontiguousarray(f.vt.T)
        v = np.ascontiguousarray(f.u)
        _fix_signs(u, v)
        return SvdFactorization(u=u, sigma=f.sigma, vt=np.ascontiguousarray(v.T), shape=shape)
    left, bid, right = bidiagonalize(a)
    ua = _accumulate(left, m, m if shape == "full" else n)
    va = _accumulate(right, n, n)
    ub, sig, vb = _bidiag_svd_arrays(bid.d.copy(), bid.e.copy(), want_uv=True, max_sweeps=max_sweeps)
    u_main = ua[:, :n] @ ub
    if shape == "full" and m > n:
        u = np.hstack([u_main, ua[:, n:]])
    else:
        u = u_main
    v = va @ vb
    _fix_signs(u, v)
    return SvdFactorization(u=u, sigma=sig, vt=np.ascontiguousarray(v.T), shape=shape)


def singular_values(a, max_sweeps: int | None = None) -> np.ndarray:
    """Singular values only (no factor accumulation)."""
    a = as_matrix(a)
    m, n = a.shape
    if m < n:
        a = np.ascontiguousarray(a.T)
    _, bid, _ = bidiagonalize(a)
    _, sig, _ = _bidiag_svd_arrays(bid.d.copy(), bid.e.copy(), want_uv=False, max_sweeps=max_sweeps)
    return sig


# ---------------------------------------------------------------------------
# Independent oracle: cyclic Jacobi for symmetric eigenproblems.


def jacobi_eig(s, max_sweeps: int = 30):
    """Eigendecomposition of a symmetric matrix by cyclic-by-row Jacobi
    rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and
    eigenvector columns in ``v`` (S v = v diag(w)).  Off-diagonal entries
    below ``1e-14 * ||S||_F`` are left untouched; the sweep stops when none
    remain above that threshold.
    """
    s = as_matrix(s)
    n = s.shape[0]
    if n != s.shape[1]:
        raise ShapeError(f"jacobi_eig needs a square matrix, got {s.shape}")
    if np.abs(s - s.T).max() > 1e-10 * max(1.0, norm(s, "frobenius")):
        raise ShapeError("jacobi_eig needs a symmetric matrix")
    a = 0.5 * (s + s.T)
    v = np.eye(n)
    thresh = 1e-14 * norm(s, "frobenius")
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            row = np.abs(a[p, p + 1 :])
            if row.size:
                off = max(off, float(row.max()))
        if off <= thresh:
            break
        if sweep == max_sweeps:
            raise ConvergenceError(
                f"Jacobi sweep limit ({max_sweeps}) exceeded", partial=np.diagonal(a).copy()
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                mask = np.ones(n, dtype=bool)
                mask[[p, q]] = False
                aip = a[mask, p].copy()
                aiq = a[mask, q].copy()
                a[mask, p] = a[p, mask] = c * aip - sn * aiq
                a[mask, q] = a[q, mask] = sn * aip + c * aiq
                vp = v[:, p].copy()
                v[:, p] = c * vp - sn * v[:, q]
                v[:, q] = sn * vp + c * v[:, q]
    w = np.diagonal(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


# ---------------------------------------------------------------------------
# Derived quantities.


def default_rank_threshold(a, t_digits: int = DEFAULT_T_DIGITS) -> float:
    """delta = 10^-t * ||A||_inf: singular values at or below delta count
    as zero (entries assumed accurate to t decimal digits)."""
    return 10.0 ** (-t_digits) * norm(a, "inf")


def numerical_rank(sigma, threshold: float) -> int:
    """Number of singular values strictly above ``threshold``."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 1:
        raise ShapeError("sigma must be a 1-D vector")
    if np.any(sigma < 0.0):
        raise ValueError("singular values must be nonnegative")
    if np.any(np.diff(sigma) > 0.0):
        raise ValueError("singular values must be sorted descending")
    return int(np.sum(sigma > threshold))


def matrix_rank(a, t_digits: int = DEFAULT_T_DIGITS) -> int:
    a = as_matrix(a)
    return numerical_rank(singular_values(a), default_rank_threshold(a, t_digits))


def norm2(a) -> float:
    """Spectral norm: the largest singular value."""
    return float(singular_values(a)[0])


def cond2(a) -> float:
    """sigma_1 / sigma_r with r the numerical rank; errors on a zero matrix."""
    a = as_matrix(a)
    sig = singular_values(a)
    r = numerical_rank(sig, default_rank_threshold(a))
    if r == 0:
        raise SingularMatrixError("condition number of the zero matrix is undefined")
    return float(sig[0] / sig[r - 1])


def pseudoinverse(a) -> np.ndarray:
    """Moore-Penrose inverse via the reduced SVD, truncated at the
    numerical rank.  Works for any shape and rank; the zero matrix maps to
    the zero matrix."""
    a = as_matrix(a)
    f = svd(a, "reduced")
    r = numerical_rank(f.sigma, default_rank_threshold(a))
    if r == 0:
        return np.zeros((a.shape[1], a.shape[0]))
    v1 = f.vt[:r, :].T
    return (v1 / f.sigma[:r]) @ f.u[:, :r].T


def low_rank(a, k: int) -> np.ndarray:
    """Best rank-k approximation sum_{j<=k} sigma_j u_j v_j^T."""
    a = as_matrix(a)
    if not 1 <= k <= min(a.shape):
        raise ValueError(f"k must be in [1, {min(a.shape)}], got {k}")
    f = svd(a, "reduced")
    return (f.u[:, :k] * f.sigma[:k]) @ f.vt[:k, :]


class SubspaceBases(NamedTuple):
    range_basis: np.ndarray
    null_basis: np.ndarray
    corange_basis: np.ndarray
    conull_basis: np.ndarray


def subspace_bases(a) -> SubspaceBases:
    """Orthonormal bases for range(A), null(A), range(A^T) and null(A^T),
    partitioned at the numerical rank."""
    a = as_matrix(a)
    f = svd(a, "full")
    r = numerical_rank(f.sigma, default_rank_threshold(a))
    v = f.vt.T
    return SubspaceBases(
        range_basis=f.u[:, :r].copy(),
        null_basis=v[:, r:].copy(),
        corange_basis=v[:, :r].copy(),
        conull_basis=f.u[:, r:].copy(),
    )


def nearest_orthogonal(a) -> np.ndarray:
    """The orthogonal matrix closest to a square A in Frobenius norm: the
    orthogonal polar factor U V^T."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"nearest_orthogonal needs a square matrix, got {a.shape}")
    f = svd(a, "full")
    return f.u @ f.vt


class SingularDistance(NamedTuple):
    absolute: float
    relative: float


def distance_to_singular(a) -> SingularDistance:
    """Distance from a nonsingular square A to the nearest singular matrix:
    sigma_n absolutely, 1/cond2(A) relatively."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"distance_to_singular needs a square matrix, got {a.shape}")
    sig = singular_values(a)
    if sig[-1] <= default_rank_threshold(a):
        raise SingularMatrixError("matrix is numerically singular")
    return SingularDistance(float(sig[-1]), float(sig[-1] / sig[0]))
