"""Shared fixtures: golden matrices and independent oracle helpers."""

import numpy as np

# Surveyor network: three hill heights measured directly and pairwise.
SURVEY_A = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-1.0, 1.0, 0.0],
        [-1.0, 0.0, 1.0],
        [0.0, -1.0, 1.0],
    ]
)
SURVEY_B = np.array([1237.0, 1941.0, 2417.0, 711.0, 1177.0, 475.0])
SURVEY_X = np.array([1236.0, 1943.0, 2416.0])
SURVEY_RESIDUAL = np.array([1.0, -2.0, 1.0, 4.0, -3.0, 2.0])
SURVEY_GRAM = np.array([[3.0, -1.0, -1.0], [-1.0, 3.0, -1.0], [-1.0, -1.0, 3.0]])
SURVEY_ATB = np.array([-651.0, 2177.0, 4069.0])

# Its orthogonal projector onto range(A), exact rational entries over 4.
SURVEY_P = (
    np.array(
        [
            [2, 1, 1, -1, -1, 0],
            [1, 2, 1, 1, 0, -1],
            [1, 1, 2, 0, 1, 1],
            [-1, 1, 0, 2, 1, -1],
            [-1, 0, 1, 1, 2, 1],
            [0, -1, 1, -1, 1, 2],
        ],
        dtype=float,
    )
    / 4.0
)

# Pseudoinverse of the survey matrix, exact rational entries over 4.
SURVEY_PINV = (
    np.array(
        [
            [2, 1, 1, -1, -1, 0],
            [1, 2, 1, 1, 0, -1],
            [1, 1, 2, 0, 1, 1],
        ],
        dtype=float,
    )
    / 4.0
)

# Column-zeroing demo matrix and its two transformed versions (4 decimals).
ZEROING_A = np.array([[2.0, 3.0, 5.0], [1.0, 2.0, -1.0], [2.0, 5.0, 3.0], [1.0, -1.0, 0.0]])
ZEROING_HOUSEHOLDER = np.array(
    [
        [-3.1623, -5.3759, -4.7434],
        [0.0, 0.3775, -2.8874],
        [0.0, 1.7550, -0.7749],
        [0.0, -2.6225, -1.8874],
    ]
)
ZEROING_GIVENS = np.array(
    [
        [3.1623, 5.3759, 4.7434],
        [0.0, 0.3162, -2.6352],
        [0.0, 2.2361, -0.7454],
        [0.0, -2.2361, -2.2361],
    ]
)

# Printed QR factors of the survey matrix (4 decimals, sign-exact).
SURVEY_Q_PRINTED = np.array(
    [
        [-0.5774, -0.2041, -0.3536, 0.5113, 0.4878, -0.0235],
        [0.0, -0.6124, -0.3536, -0.4878, 0.0235, 0.5113],
        [0.0, 0.0, -0.7071, -0.0235, -0.5113, -0.4878],
        [0.5774, -0.4082, -0.0, 0.6664, -0.1786, 0.1551],
        [0.5774, 0.2041, -0.3536, -0.1551, 0.6664, -0.1786],
        [0.0, 0.6124, -0.3536, 0.1786, -0.1551, 0.6664],
    ]
)
SURVEY_R_PRINTED = np.array(
    [
        [-1.7321, 0.5774, 0.5774],
        [0.0, -1.6330, 0.8165],
        [0.0, 0.0, -1.4142],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ]
)

# 3x2 SVD demo: singular values 5, 3; |V| = [[1,1],[1,-1]] / sqrt(2).
SVD_3X2 = np.array([[3.0, 2.0], [2.0, 3.0], [2.0, -2.0]])

# 5x3 SVD demo with sigma = [5.149, 4.3804, 1.5969] to 4 decimals.
SVD_5X3 = np.array(
    [[1.0, 3.0, 2.0], [4.0, 0.0, -1.0], [0.5, 2.0, 1.0], [1.0, 1.0, 1.0], [2.0, 1.0, -2.0]]
)
SVD_5X3_SIGMA = np.array([5.149, 4.3804, 1.5969])


def rank2_factors():
    """Hand-specified rank-2 SVD factors of a 5x4 matrix (exact surds)."""
    s2, s3, s6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
    u = np.array(
        [
            [1 / s2, -1 / s2, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, -1.0, 0.0, 0.0],
            [1 / s2, 1 / s2, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    sig = np.zeros((5, 4))
    sig[0, 0] = 2 * s3
    sig[1, 1] = 2.0
    v = np.array(
        [
            [s6 / 3, 0.0, 0.0, -1 / s3],
            [0.0, 0.0, 1.0, 0.0],
            [1 / s6, -1 / s2, 0.0, 1 / s3],
            [1 / s6, 1 / s2, 0.0, 1 / s3],
        ]
    )
    return u, sig, v


# The matrix those factors define, and its pseudoinverse
# V1 diag(1/sigma) U1^T worked out in exact arithmetic and verified
# against the four Moore-Penrose identities.
RANK2_A = np.array(
    [
        [2.0, 0.0, 2.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [2.0, 0.0, 0.0, 2.0],
        [0.0, 0.0, 0.0, 0.0],
    ]
)
RANK2_PINV = np.array(
    [
        [1 / 6, 0.0, 0.0, 1 / 6, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [1 / 3, 0.0, 0.0, -1 / 6, 0.0],
        [-1 / 6, 0.0, 0.0, 1 / 3, 0.0],
    ]
)
RANK2_MINNORM_X = np.array([1 / 3, 0.0, 1 / 6, 1 / 6])


def triple_loop_matmul(a, b):
    m, k = a.shape
    k2, n = b.shape
    assert k == k2
    c = np.zeros((m, n))
    for i in range(m):
        for j in range(n):
            acc = 0.0
            for l in range(k):
                acc += a[i, l] * b[l, j]
            c[i, j] = acc
    return c


def dense_reflector(h):
    """Independent materialization I - beta u u^T from the stored fields."""
    return np.eye(h.u.size) - h.beta * np.outer(h.u, h.u)


def fro(a):
    return float(np.sqrt((np.asarray(a) ** 2).sum()))


def random_rank_deficient(rng, m, n, r):
    return rng.standard_normal((m, r)) @ rng.standard_normal((r, n))


def spectral_norm_oracle(a):
    """Reference 2-norm used only to judge results (independent of the
    package's own factorizations)."""
    return float(np.linalg.svd(a, compute_uv=False)[0])
