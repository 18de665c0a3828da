"""Least-squares solvers over a shared result contract, plus conditioning
diagnostics (residual angle and perturbation bounds).

Four routes are provided.  Normal equations are fast but square the
condition number and can lose rank information to rounding; the QR route
is the stable default for full-rank systems; pivoted QR and SVD handle
rank deficiency, the SVD route returning the norm-minimal solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefiniteError, RankDeficiencyError, ShapeError
from .matrix import as_matrix, as_vector, back_sub, cholesky, forward_sub, norm
from .qr import QrMode, qr_householder, qr_pivoted
from .reflectors import apply_reflector_to_vector
from .svd import cond2, default_rank_threshold, numerical_rank, svd

__all__ = [
    "LeastSquaresSolution",
    "ConditioningReport",
    "solve_normal",
    "solve_qr",
    "solve_qr_pivoted",
    "solve_svd",
    "solve",
    "conditioning_report",
]


@dataclass
class LeastSquaresSolution:
    x: np.ndarray
    residual_norm: float
    method: str
    rank: int
    free_params: int | None = None


@dataclass
class ConditioningReport:
    """Sensitivity summary for min ||Ax - b||: cond2(A), the angle theta
    between b and Ax, and first-order perturbation bounds for the right-hand
    side (cond / cos theta) and the matrix ((cond^2 tan theta + cond) eps_A).
    """

    cond: float
    cos_theta: float
    theta: float
    rhs_sensitivity_bound: float
    matrix_sensitivity_bound: float


def _checked(a, b):
    a = as_matrix(a)
    b = as_vector(b)
    if a.shape[0] != b.size:
        raise ShapeError(f"matrix {a.shape} does not match right-hand side of length {b.size}")
    return a, b


def solve_normal(a, b) -> LeastSquaresSolution:
    """Solve A^T A x = A^T b by Cholesky plus two triangular solves.

    Requires full column rank: a Cholesky breakdown is reported as rank
    deficiency with a pointer to the stable routes.
    """
    a, b = _checked(a, b)
    m, n = a.shape
    try:
        l = cholesky(a.T @ a)
    except NotPositiveDefiniteError as exc:
        raise RankDeficiencyError(
            "normal equations are numerically singular (matrix not of full column rank "
            f"at pivot {exc.index}); use solve_qr_pivoted or solve_svd"
        ) from exc
    z = forward_sub(l, a.T @ b)
    x = back_sub(l.T, z)
    return LeastSquaresSolution(x=x, residual_norm=float(np.linalg.norm(b - a @ x)), method="normal", rank=n)


def solve_qr(a, b) -> LeastSquaresSolution:
    """Solve min ||Ax - b|| for full-column-rank A via Householder QR:
    back-substitute R1 x = Q1^T b; the residual norm is ||Q2^T b||."""
    a, b = _checked(a, b)
    m, n = a.shape
    if m < n:
        raise RankDeficiencyError(
            f"system is underdetermined ({m} rows, {n} columns); use solve_qr_pivoted or solve_svd"
        )
    f = qr_householder(a, QrMode.R_AND_REFLECTORS)
    tol = 1e-12 * norm(a, "inf")
    diag = np.abs(np.diagonal(f.r)[:n])
    if np.any(diag <= tol):
        i = int(np.argmax(diag <= tol))
        raise RankDeficiencyError(
            f"R diagonal entry {i} is negligible ({diag[i]:.3e} <= {tol:.3e}); "
            "use solve_qr_pivoted or solve_svd"
        )
    qtb = b
    for h in f.reflectors:
        qtb = apply_reflector_to_vector(h, qtb)
    x = back_sub(f.r[:n, :n], qtb[:n])
    residual = float(np.linalg.norm(qtb[n:])) if m > n else 0.0
    return LeastSquaresSolution(x=x, residual_norm=residual, method="qr", rank=n)


def solve_qr_pivoted(a, b, y_hat=None, t_digits: int = 12) -> LeastSquaresSolution:
    """Solve min ||Ax - b|| for any rank via column-pivoted QR.

    With rank r < n the solution family has n - r free parameters ``y_hat``
    (default zero, the basic solution); every choice gives the same
    residual norm.
    """
    a, b = _checked(a, b)
    m, n = a.shape
    f = qr_pivoted(a, t_digits=t_digits)
    r = f.rank
    if y_hat is None:
        y_hat = np.zeros(n - r)
    else:
        y_hat = np.asarray(y_hat, dtype=float).reshape(-1)
        if y_hat.size != n - r:
            raise ShapeError(f"y_hat must have length n - rank = {n - r}, got {y_hat.size}")
        if y_hat.size and not np.isfinite(y_hat).all():
            raise ValueError("y_hat entries must be finite")
    qtb = b
    for h in f.reflectors:
        qtb = apply_reflector_to_vector(h, qtb)
    if r > 0:
        rhs = qtb[:r] - f.r[:r, r:] @ y_hat
        y_tilde = back_sub(f.r[:r, :r], rhs)
    else:
        y_tilde = np.zeros(0)
    y = np.concatenate([y_tilde, y_hat])
    x = np.zeros(n)
    x[f.perm] = y
    return LeastSquaresSolution(
        x=x,
        residual_norm=float(np.linalg.norm(b - a @ x)),
        method="qr_pivoted",
        rank=r,
        free_params=n - r,
    )


def solve_svd(a, b) -> LeastSquaresSolution:
    """Norm-minimal least-squares solution x = sum_{j<=r} (u_j^T b / sigma_j) v_j,
    truncated at the numerical rank; equals pseudoinverse(a) @ b."""
    a, b = _checked(a, b)
    n = a.shape[1]
    f = svd(a, "reduced")
    r = numerical_rank(f.sigma, default_rank_threshold(a))
    if r > 0:
        coeff = (f.u[:, :r].T @ b) / f.sigma[:r]
        x = f.vt[:r, :].T @ coeff
    else:
        x = np.zeros(n)
    return LeastSquaresSolution(
        x=x,
        residual_norm=float(np.linalg.norm(b - a @ x)),
        method="svd",
        rank=r,
        free_params=n - r,
    )


def solve(a, b) -> LeastSquaresSolution:
    """Default route: QR when the numerical rank is full, SVD otherwise."""
    a, b = _checked(a, b)
    if qr_pivoted(a).rank == a.shape[1]:
        return solve_qr(a, b)
    return solve_svd(a, b)


def conditioning_report(a, b, x, eps_a: float = 0.0) -> ConditioningReport:
    """Evaluate the sensitivity of a computed least-squares solution.

    ``cos_theta = ||Ax|| / ||b||`` is clamped to [0, 1] before the arccos.
    ``eps_a`` is the relative matrix perturbation ||E|| / ||A|| the matrix
    bound should be evaluated at.
    """
    a = as_matrix(a)
    b = as_vector(b)
    x = as_vector(x)
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        raise ValueError("conditioning report needs a nonzero right-hand side")
    cond = cond2(a)
    cos_theta = min(1.0, max(0.0, float(np.linalg.norm(a @ x)) / bnorm))
    theta = math.acos(cos_theta)
    rhs_bound = cond / cos_theta if cos_theta > 0.0 else math.inf
    matrix_bound = (cond * cond * math.tan(theta) + cond) * eps_a
    return ConditioningReport(
        cond=cond,
        cos_theta=cos_theta,
        theta=theta,
        rhs_sensitivity_bound=rhs_bound,
        matrix_sensitivity_bound=matrix_bound,
    )
