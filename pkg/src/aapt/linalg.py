"""Small dense linear-algebra kernel.

Everything here works on real ``numpy`` arrays of modest size (2x2 up to
16x16).  LAPACK does the heavy lifting; this module pins down the
conventions the rest of the package relies on: a deterministic SVD sign
convention, an explicit singularity cut for inversion, and a singularity
error that carries the offending determinant.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

#: Default cut below which ``|det|`` is treated as exactly singular.
SINGULAR_TOL = 1e-12

MAX_DIM = 16


class DimensionError(ValueError):
    """Raised when a matrix has the wrong shape for an operation."""


class SingularMatrix(np.linalg.LinAlgError):
    """Raised when a matrix is too close to singular to invert.

    The absolute determinant is kept on ``self.det`` so callers can report
    how far from invertible the input was.
    """

    def __init__(self, det: float, tol: float = SINGULAR_TOL):
        self.det = float(det)
        self.tol = float(tol)
        super().__init__(f"matrix is singular: |det| = {self.det:.3e} <= tol = {self.tol:.1e}")


class SvdResult(NamedTuple):
    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray


def _as_real_matrix(m) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    if np.iscomplexobj(m):
        if np.max(np.abs(m.imag), initial=0.0) > 0:
            raise DimensionError("expected a real matrix")
        m = m.real
    m = m.astype(float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _as_square(m) -> np.ndarray:
    m = _as_real_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise DimensionError(f"dimension {m.shape[0]} exceeds supported maximum {MAX_DIM}")
    return m


def determinant(m) -> float:
    """Signed determinant of a square real matrix (dimension <= 16).

    Sizes up to 3 use the closed-form expansion; larger ones go through the
    LU factorisation.
    """
    m = _as_square(m)
    n = m.shape[0]
    if n == 0:
        return 1.0
    if n == 1:
        return float(m[0, 0])
    if n == 2:
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if n == 3:
        return float(
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )
    return float(np.linalg.det(m))


def svd(m) -> SvdResult:
    """Singular value decomposition ``m = U diag(s) V^T`` with a fixed gauge.

    Singular values come out in descending order.  For every singular pair the
    sign is chosen so that the first entry of the left vector whose magnitude
    exceeds ``1e-12`` is positive; the right vector is flipped with it.
    """
    m = _as_real_matrix(m)
    u, s, vt = np.linalg.svd(m)
    v = vt.T.copy()
    u = u.copy()
    for i in range(min(u.shape[1], v.shape[1], len(s))):
        col = u[:, i]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size and col[nz[0]] < 0:
            u[:, i] = -col
            v[:, i] = -v[:, i]
    return SvdResult(u, s, v)


def singular_values(m) -> np.ndarray:
    return np.linalg.svd(_as_real_matrix(m), compute_uv=False)


def invert(m, tol: float = SINGULAR_TOL) -> np.ndarray:
    """Inverse of a square real matrix.

    Raises
    ------
    SingularMatrix
        If ``|det(m)| <= tol``.
    """
    m = _as_square(m)
    det = determinant(m)
    if abs(det) <= tol:
        raise SingularMatrix(abs(det), tol)
    return np.linalg.inv(m)


def frobenius_norm(m) -> float:
    m = _as_real_matrix(m)
    scale = np.max(np.abs(m), initial=0.0)
    if scale == 0:
        return 0.0
    m = m / scale
    return float(scale * np.sqrt(np.sum(m * m)))


def spectral_norm(m) -> float:
    """Largest singular value."""
    s = singular_values(m)
    return float(s[0]) if s.size else 0.0


def condition_number(m, tol: float = SINGULAR_TOL) -> float:
    """Ratio of extreme singular values, ``inf`` when the smallest is below ``tol``."""
    s = singular_values(m)
    if s[-1] <= tol * max(s[0], 1.0):
        return float("inf")
    return float(s[0] / s[-1])


def adjugate(m) -> np.ndarray:
    """Classical adjugate (transposed cofactor matrix), computed from minors.

    No inversion is involved, so this stays well defined for singular input.
    """
    m = _as_square(m)
    n = m.shape[0]
    if n == 1:
        return np.ones((1, 1))
    adj = np.empty_like(m)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(m, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * determinant(minor)
    return adj
