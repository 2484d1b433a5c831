"""Sinisterness, conditioning and the Frobenius-norm reduction of a correlation matrix.

The determinant of ``tau`` (the Sinisterness) decides whether a system-ancilla
state can be used for ancilla-assisted tomography at all; the condition number
of ``tau`` bounds how much measurement error is amplified when it is.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .linalg import SINGULAR_TOL, adjugate, condition_number as _kappa, determinant, svd

REPORT_FIELDS = ("sinisterness", "sv1", "sv2", "sv3", "sv4", "kappa", "kappa_lb", "opt_x_kappa", "frob", "adj", "faithful")


def _check_tau(tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1] or tau.shape[0] < 2:
        raise ValueError(f"tau must be a square matrix of size >= 2, got {tau.shape}")
    if abs(tau[0, 0] - 1) > 1e-10:
        raise ValueError(f"tau[0, 0] must be 1, got {tau[0, 0]}")
    return tau


def local_vectors(tau) -> tuple[np.ndarray, np.ndarray]:
    """Bloch vectors of the reduced system and ancilla states (first column, first row)."""
    tau = _check_tau(tau)
    return tau[1:, 0].copy(), tau[0, 1:].copy()


def core_matrix(tau) -> np.ndarray:
    """Connected correlations ``C = T - a b^T``."""
    tau = _check_tau(tau)
    a, b = tau[1:, 0], tau[0, 1:]
    return tau[1:, 1:] - np.outer(a, b)


def sinisterness(tau) -> float:
    """Determinant of the core matrix, equal to ``det(tau)`` since ``tau[0, 0] = 1``."""
    return determinant(core_matrix(tau))


def is_faithful(tau, tol: float = SINGULAR_TOL) -> bool:
    return abs(sinisterness(tau)) > tol


def condition_number(tau, tol: float = SINGULAR_TOL) -> float:
    """``lambda_max / lambda_min``; ``inf`` for a singular ``tau``."""
    return _kappa(_check_tau(tau), tol)


def optimal_x_kappa(det_abs: float, m: int = 4) -> float:
    """Condition number of the best diagonal ``tau`` with a given ``|det|``.

    With the leading entry pinned at 1 and the other ``m - 1`` diagonal entries
    equal, each is ``det_abs ** (1/(m-1))`` and the condition number is its
    reciprocal.
    """
    if not 0 <= det_abs <= 1 + 1e-12:
        raise ValueError(f"|det| must lie in [0, 1], got {det_abs}")
    if det_abs == 0:
        return math.inf
    return det_abs ** (-1.0 / (m - 1))


def kappa_lower_bound(tau) -> float:
    """``lambda_max^(m/(m-1)) / |det|^(1/(m-1))``, a lower bound on the condition number."""
    tau = _check_tau(tau)
    m = tau.shape[0]
    det = abs(determinant(tau))
    if det <= 0:
        return math.inf
    lam_max = svd(tau).singular_values[0]
    return float(lam_max ** (m / (m - 1)) / det ** (1.0 / (m - 1)))


def frobenius_measure(tau) -> float:
    """Sum of squared singular values (the squared Frobenius norm)."""
    tau = _check_tau(tau)
    return float(np.sum(tau * tau))


def adjugate_measure(tau, tol: float = 0.0) -> float:
    """``||tau^-1||_F`` evaluated as ``||adj(tau)||_F / |det(tau)|`` without inverting."""
    tau = _check_tau(tau)
    det = abs(determinant(tau))
    if det <= tol:
        return math.inf
    adj = adjugate(tau)
    return float(np.sqrt(np.sum(adj * adj)) / det)


def min_frobenius_at_fixed_det(det_abs: float) -> float:
    """Smallest ``sum lambda_i^2`` over four singular values with ``lambda_1 = 1``
    and product ``det_abs``: all remaining values equal, ``1 + 3 det_abs^(2/3)``."""
    if not 0 < det_abs <= 1:
        raise ValueError(f"|det| must lie in (0, 1], got {det_abs}")
    return 1 + 3 * det_abs ** (2 / 3)


@dataclass(frozen=True)
class XReduction:
    """Reduction of a two-qubit ``tau`` to diagonal form.

    ``left_rotation @ core @ right_rotation.T == diag(s)``.  Both rotations are
    proper (determinant +1); ``s[0], s[1] >= 0`` and ``s[2]`` carries the sign
    of ``det(core)``.  ``a`` and ``b`` are the local Bloch vectors expressed in
    the rotated frames.
    """

    s: np.ndarray
    a: np.ndarray
    b: np.ndarray
    left_rotation: np.ndarray
    right_rotation: np.ndarray
    core: np.ndarray

    @property
    def tau_x(self) -> np.ndarray:
        return np.diag(np.concatenate([[1.0], self.s]))

    def elimination_matrices(self, tau) -> tuple[np.ndarray, np.ndarray]:
        """Unit-determinant ``(R, L)`` with ``R @ tau @ L`` block diagonal ``diag(1, core)``."""
        a0, b0 = local_vectors(tau)
        r = np.eye(4)
        r[1:, 0] = -a0
        l = np.eye(4)
        l[0, 1:] = -b0
        return r, l

    def rotations(self) -> tuple[np.ndarray, np.ndarray]:
        """4x4 ``(U, V)`` embedding the 3x3 rotations."""
        u = np.eye(4)
        u[1:, 1:] = self.left_rotation
        v = np.eye(4)
        v[1:, 1:] = self.right_rotation
        return u, v

    def reconstruct(self, tau) -> np.ndarray:
        """``U R tau L V^T``; equals ``tau_x`` up to rounding."""
        r, l = self.elimination_matrices(tau)
        u, v = self.rotations()
        return u @ r @ np.asarray(tau, dtype=float) @ l @ v.T


def x_reduce(tau) -> XReduction:
    tau = _check_tau(tau)
    if tau.shape != (4, 4):
        raise ValueError("x_reduce is defined for two-qubit (4x4) tau")
    a0, b0 = local_vectors(tau)
    core = core_matrix(tau)
    p, sv, q = svd(core)
    s = sv.copy()
    if np.linalg.det(p) < 0:
        p[:, 2] *= -1
        s[2] *= -1
    if np.linalg.det(q) < 0:
        q[:, 2] *= -1
        s[2] *= -1
    return XReduction(s=s, a=p.T @ a0, b=q.T @ b0, left_rotation=p.T, right_rotation=q.T, core=core)


def frobenius_identity_check(tau) -> tuple[float, float, float]:
    """Compare ``||tau||_F^2`` with its expansion around the diagonal form.

    Returns ``(lhs, rhs, |lhs - rhs|)`` where
    ``rhs = ||tau_x||^2 + |a|^2 + |b|^2 + |a|^2 |b|^2 + 2 sum a_i b_i s_i``.
    """
    tau = _check_tau(tau)
    red = x_reduce(tau)
    a2 = red.a @ red.a
    b2 = red.b @ red.b
    lhs = float(np.sum(tau * tau))
    rhs = float(1 + red.s @ red.s + a2 + b2 + a2 * b2 + 2 * np.sum(red.a * red.b * red.s))
    return lhs, rhs, abs(lhs - rhs)


@dataclass(frozen=True)
class FaithfulnessReport:
    sinisterness: float
    singular_values: tuple
    kappa: float
    kappa_lower_bound: float
    optimal_x_kappa: float
    frobenius_measure: float
    adjugate_measure: float
    faithful: bool

    def to_row(self) -> dict:
        """Flat record with the column names of :data:`REPORT_FIELDS`."""
        sv = list(self.singular_values) + [math.nan] * (4 - len(self.singular_values))
        return {
            "sinisterness": self.sinisterness,
            "sv1": sv[0],
            "sv2": sv[1],
            "sv3": sv[2],
            "sv4": sv[3],
            "kappa": self.kappa,
            "kappa_lb": self.kappa_lower_bound,
            "opt_x_kappa": self.optimal_x_kappa,
            "frob": self.frobenius_measure,
            "adj": self.adjugate_measure,
            "faithful": self.faithful,
        }

    def as_dict(self) -> dict:
        return asdict(self)


def analyze(tau, tol: float = SINGULAR_TOL) -> FaithfulnessReport:
    """Everything this module knows about one correlation matrix."""
    tau = _check_tau(tau)
    m = tau.shape[0]
    sin = sinisterness(tau)
    faithful = abs(sin) > tol
    sv = svd(tau).singular_values
    return FaithfulnessReport(
        sinisterness=sin,
        singular_values=tuple(float(x) for x in sv),
        kappa=condition_number(tau, tol) if faithful else math.inf,
        kappa_lower_bound=kappa_lower_bound(tau) if faithful else math.inf,
        optimal_x_kappa=optimal_x_kappa(min(abs(sin), 1.0), m) if faithful else math.inf,
        frobenius_measure=frobenius_measure(tau),
        adjugate_measure=adjugate_measure(tau, tol) if faithful else math.inf,
        faithful=faithful,
    )
