"""Fixed-size linear algebra for color statistics: 3-vectors and 3x3 matrices.

Values are plain numpy arrays: ``Vec3`` has shape (3,), ``Mat3`` and ``SymMat3``
shape (3, 3). A ``SymMat3`` is stored as the full symmetric array.
"""

import logging
import math
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from constants.config import PSD_TOLERANCE, SINGULAR_FLOOR
from constants.messages import WRONG_SHAPE
from core.exceptions import (
    DataError,
    NonFiniteInput,
    NotPositiveSemidefinite,
    SingularCovariance,
)

Vec3 = NDArray[np.float64]
Mat3 = NDArray[np.float64]
SymMat3 = NDArray[np.float64]

logger = logging.getLogger(__name__)

_IDENTITY = np.eye(3)
# Relative reconstruction error above which the closed form hands over to LAPACK
_RECONSTRUCTION_TOLERANCE = 1e-12
_TWO_THIRDS_PI = 2.0 * math.pi / 3.0


def _as_finite(value: ArrayLike, shape: Tuple[int, ...]) -> NDArray[np.float64]:
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != shape:
        raise DataError(f"{WRONG_SHAPE}: expected {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput()
    return arr


def as_vec3(value: ArrayLike) -> Vec3:
    """Validate and convert a 3-vector.

    Raises:
        DataError: If the shape is not (3,)
        NonFiniteInput: If any component is NaN or infinite
    """
    return _as_finite(value, (3,))


def as_mat3(value: ArrayLike) -> Mat3:
    """Validate and convert a general 3x3 matrix (row-major)."""
    return _as_finite(value, (3, 3))


def as_sym3(value: ArrayLike) -> SymMat3:
    """Validate a 3x3 matrix and return its symmetric part."""
    arr = as_mat3(value)
    return 0.5 * (arr + arr.T)


def trace3(m: ArrayLike) -> float:
    """Trace of a 3x3 matrix."""
    arr = as_mat3(m)
    return float(arr[0, 0] + arr[1, 1] + arr[2, 2])


def det3(m: ArrayLike) -> float:
    """Determinant of a 3x3 matrix by cofactor expansion."""
    a = as_mat3(m)
    return float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def _char_poly(m: SymMat3) -> Tuple[float, float, float]:
    """Coefficients (c2, c1, c0) of det(m - x I) = -x^3 + c2 x^2 - c1 x + c0."""
    c2 = m[0, 0] + m[1, 1] + m[2, 2]
    c1 = (
        m[0, 0] * m[1, 1]
        + m[0, 0] * m[2, 2]
        + m[1, 1] * m[2, 2]
        - m[0, 1] ** 2
        - m[0, 2] ** 2
        - m[1, 2] ** 2
    )
    c0 = det3(m)
    return c2, c1, c0


def _eigenvalues(m: SymMat3) -> NDArray[np.float64]:
    """Eigenvalues of a symmetric matrix in descending order.

    Trigonometric solution of the characteristic cubic followed by one Newton step
    per root.
    """
    off = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if off == 0.0:
        return np.sort(np.diag(m))[::-1].copy()

    q = (m[0, 0] + m[1, 1] + m[2, 2]) / 3.0
    p2 = (m[0, 0] - q) ** 2 + (m[1, 1] - q) ** 2 + (m[2, 2] - q) ** 2 + 2.0 * off
    p = math.sqrt(p2 / 6.0)
    b = (m - q * _IDENTITY) / p
    r = min(1.0, max(-1.0, det3(b) / 2.0))
    phi = math.acos(r) / 3.0

    largest = q + 2.0 * p * math.cos(phi)
    smallest = q + 2.0 * p * math.cos(phi + _TWO_THIRDS_PI)
    values = np.array([largest, 3.0 * q - largest - smallest, smallest])

    c2, c1, c0 = _char_poly(m)
    for i, lam in enumerate(values):
        f = -(lam**3) + c2 * lam**2 - c1 * lam + c0
        df = -3.0 * lam**2 + 2.0 * c2 * lam - c1
        # Near a double root the derivative vanishes and the step is meaningless
        if abs(df) > 1e-8:
            values[i] = lam - f / df
    return np.sort(values)[::-1]


def _null_vector(shifted: Mat3) -> Vec3:
    """Unit vector orthogonal to the rows of a rank-2 matrix."""
    rows = shifted
    crosses = (
        np.cross(rows[0], rows[1]),
        np.cross(rows[0], rows[2]),
        np.cross(rows[1], rows[2]),
    )
    best = max(crosses, key=lambda v: float(v @ v))
    norm = math.sqrt(float(best @ best))
    if norm == 0.0:
        return _IDENTITY[0].copy()
    return best / norm


def _complement(v: Vec3) -> Tuple[Vec3, Vec3]:
    """Orthonormal pair spanning the plane orthogonal to unit vector ``v``."""
    if abs(v[0]) > abs(v[1]):
        u = np.array([-v[2], 0.0, v[0]]) / math.hypot(v[0], v[2])
    else:
        u = np.array([0.0, v[2], -v[1]]) / math.hypot(v[1], v[2])
    return u, np.cross(v, u)


def _eigenvectors(m: SymMat3, values: NDArray[np.float64]) -> Mat3:
    """Orthonormal eigenvector columns aligned with descending ``values``."""
    if values[0] - values[2] <= 1e-14:
        return _IDENTITY.copy()

    # Solve first for the eigenvalue furthest from the other two
    isolated = 0 if values[0] - values[1] >= values[1] - values[2] else 2
    v_iso = _null_vector(m - values[isolated] * _IDENTITY)

    u, w = _complement(v_iso)
    shifted = m - values[1] * _IDENTITY
    j00 = float(u @ shifted @ u)
    j01 = float(u @ shifted @ w)
    j11 = float(w @ shifted @ w)
    if max(abs(j00), abs(j01), abs(j11)) <= 1e-14:
        v_mid = u
    elif j00**2 + j01**2 >= j01**2 + j11**2:
        v_mid = -j01 * u + j00 * w
    else:
        v_mid = j11 * u - j01 * w
    v_mid = v_mid / math.sqrt(float(v_mid @ v_mid))

    v_other = np.cross(v_iso, v_mid)
    vectors = np.empty((3, 3))
    vectors[:, 1] = v_mid
    if isolated == 0:
        vectors[:, 0], vectors[:, 2] = v_iso, v_other
    else:
        vectors[:, 0], vectors[:, 2] = v_other, v_iso
    return vectors


def eigh_sym3(m: ArrayLike) -> Tuple[Vec3, Mat3]:
    """Eigendecomposition of a symmetric 3x3 matrix.

    Args:
        m: Symmetric matrix; only its symmetric part is used

    Returns:
        Eigenvalues in descending order and a matrix whose columns are the
        matching orthonormal eigenvectors

    Raises:
        NonFiniteInput: If any entry is NaN or infinite
    """
    sym = as_sym3(m)
    scale = float(np.max(np.abs(sym)))
    if scale == 0.0:
        return np.zeros(3), _IDENTITY.copy()

    scaled = sym / scale
    values = _eigenvalues(scaled)
    vectors = _eigenvectors(scaled, values)

    residual = np.linalg.norm(vectors @ np.diag(values) @ vectors.T - scaled)
    orthogonality = np.linalg.norm(vectors.T @ vectors - _IDENTITY)
    if residual > _RECONSTRUCTION_TOLERANCE or orthogonality > _RECONSTRUCTION_TOLERANCE:
        logger.debug(
            f"Closed-form eigensolver fell back to LAPACK - Residual: {residual:.3e}"
        )
        values, vectors = np.linalg.eigh(scaled)
        values, vectors = values[::-1].copy(), vectors[:, ::-1].copy()

    return values * scale, vectors


def _from_eigen(values: Vec3, vectors: Mat3) -> SymMat3:
    out = (vectors * values) @ vectors.T
    return 0.5 * (out + out.T)


def project_psd(m: ArrayLike) -> SymMat3:
    """Nearest symmetric PSD matrix in Frobenius norm (negative eigenvalues to 0)."""
    values, vectors = eigh_sym3(m)
    return _from_eigen(np.maximum(values, 0.0), vectors)


def sqrt_spd(m: ArrayLike) -> SymMat3:
    """Principal square root of a symmetric positive semidefinite matrix.

    Eigenvalues down to ``-PSD_TOLERANCE`` are treated as round-off and clamped to 0.

    Args:
        m: Symmetric PSD matrix

    Returns:
        Symmetric PSD ``r`` with ``r @ r == m``

    Raises:
        NotPositiveSemidefinite: If an eigenvalue is below ``-PSD_TOLERANCE``
    """
    values, vectors = eigh_sym3(m)
    if values[-1] < -PSD_TOLERANCE:
        raise NotPositiveSemidefinite(
            f"Matrix is not positive semidefinite: smallest eigenvalue {values[-1]:.3e}"
        )
    return _from_eigen(np.sqrt(np.maximum(values, 0.0)), vectors)


def inv_sqrt_spd(m: ArrayLike, eps: float = 0.0) -> SymMat3:
    """Inverse principal square root of ``m + eps * I``.

    Args:
        m: Symmetric PSD matrix
        eps: Ridge added to the diagonal before inversion

    Returns:
        Symmetric ``r`` with ``r @ (m + eps I) @ r == I``

    Raises:
        SingularCovariance: If the smallest ridged eigenvalue is below the floor
    """
    ridged = as_sym3(m) + eps * _IDENTITY
    values, vectors = eigh_sym3(ridged)
    if values[-1] < SINGULAR_FLOOR:
        raise SingularCovariance(
            f"Covariance is singular: smallest eigenvalue {values[-1]:.3e} "
            f"with ridge {eps:g}"
        )
    return _from_eigen(1.0 / np.sqrt(values), vectors)


def op_norm(m: ArrayLike) -> float:
    """Largest singular value of a 3x3 matrix."""
    arr = as_mat3(m)
    values, _ = eigh_sym3(arr.T @ arr)
    return math.sqrt(max(float(values[0]), 0.0))
