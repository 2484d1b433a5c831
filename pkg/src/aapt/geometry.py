"""Simplex geometry behind the separable-state determinant.

For a four-term separable state the correlation matrix factors as
``tau = A diag(P) B^T`` with ``A`` (``B``) holding the columns ``(1, a_n)``
(``(1, b_n)``).  Each factor's determinant is six times the signed volume of
the tetrahedron spanned by its Bloch vectors, which gives

    det(tau) = 36 P1 P2 P3 P4 V(a1..a4) V(b1..b4).

On the unit sphere the volume is largest for a regular tetrahedron, so
``|det(tau)| <= 1/27``.  The same construction with ``M = 4**N`` terms and
regular ``(M-1)``-simplices gives ``|det(tau)| = 1/(M-1)**(M-1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import SeparableSpec


def tetra_volume_signed(v1, v2, v3, v4) -> float:
    """Oriented volume ``det[v2 - v1, v3 - v1, v4 - v1] / 6``."""
    v1 = np.asarray(v1, dtype=float)
    edges = np.array([np.asarray(v, dtype=float) - v1 for v in (v2, v3, v4)])
    return float(np.linalg.det(edges)) / 6


def separable_sinisterness(spec: SeparableSpec) -> float:
    """Determinant of ``tau`` for a four-term separable state, from volumes alone."""
    if spec.weights.size != 4:
        raise ValueError("the closed form needs exactly four product terms")
    va = tetra_volume_signed(*spec.system_vertices)
    vb = tetra_volume_signed(*spec.ancilla_vertices)
    return 36 * float(np.prod(spec.weights)) * va * vb


@dataclass(frozen=True)
class Simplex:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1:
            raise ValueError(f"an n-simplex needs n+1 points in R^n, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("simplex vertices must be finite")
        object.__setattr__(self, "vertices", v)

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]


def regular_simplex(n: int) -> Simplex:
    """Regular n-simplex inscribed in the unit sphere of R^n, centred at the origin.

    Built from the columns of the Helmert contrast matrix, which are
    orthogonal to the all-ones vector; rescaled to unit length their pairwise
    dot products are ``-1/n``.
    """
    if n < 1:
        raise ValueError("simplex dimension must be at least 1")
    h = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        h[k - 1, :k] = 1.0
        h[k - 1, k] = -k
        h[k - 1] /= math.sqrt(k * (k + 1))
    vertices = h.T * math.sqrt((n + 1) / n)
    return Simplex(vertices)


def simplex_volume(s: Simplex) -> float:
    """``sqrt(det G) / n!`` with ``G`` the Gram matrix of edges from the first vertex."""
    edges = s.vertices[1:] - s.vertices[0]
    gram = edges @ edges.T
    det = np.linalg.det(gram)
    return math.sqrt(max(det, 0.0)) / math.factorial(s.dimension)


def inscribed_edge_length(n: int) -> float:
    """Edge of a regular n-simplex inscribed in the unit sphere, ``sqrt(2 + 2/n)``."""
    return math.sqrt(2 + 2 / n)


def regular_simplex_volume(edge: float, n: int) -> float:
    """Volume of a regular n-simplex with the given edge length."""
    return edge**n / math.factorial(n) * math.sqrt((n + 1) / 2**n)


def inscribed_simplex_volume(n: int) -> float:
    """``(n+1)^((n+1)/2) / (n! n^(n/2))``."""
    return (n + 1) ** ((n + 1) / 2) / (math.factorial(n) * n ** (n / 2))


@dataclass(frozen=True)
class ScalingReport:
    n_qubits: int
    m: int
    det_abs: float
    log10_det_abs: float
    kappa: float
    tau_diagonal: np.ndarray


def qubit_scaling(n_qubits: int) -> ScalingReport:
    """Best separable ``|det(tau)|`` and condition number with ``N`` system qubits.

    ``M = 4**N``; the optimum is the diagonal ``(1, 1/(M-1), ..., 1/(M-1))``.
    The determinant is accumulated in log space because it underflows a double
    already at ``N = 4``.
    """
    if n_qubits < 1:
        raise ValueError("need at least one system qubit")
    m = 4**n_qubits
    log10_det = -(m - 1) * math.log10(m - 1)
    diag = np.full(m, 1.0 / (m - 1))
    diag[0] = 1.0
    return ScalingReport(
        n_qubits=n_qubits,
        m=m,
        det_abs=10.0**log10_det,
        log10_det_abs=log10_det,
        kappa=float(m - 1),
        tau_diagonal=diag,
    )


def simplex_bound_log10(m: int) -> float:
    """``log10`` of ``[(M-1)!]^2 prod(P) V_a V_b`` for equal weights and two
    inscribed regular ``(M-1)``-simplices; equals ``-(M-1) log10(M-1)``."""
    n = m - 1
    log_v = ((n + 1) / 2) * math.log(n + 1) - math.lgamma(n + 1) - (n / 2) * math.log(n)
    log_det = 2 * math.lgamma(m) - m * math.log(m) + 2 * log_v
    return log_det / math.log(10)


def _softmax(x):
    e = np.exp(x - np.max(x))
    return e / e.sum()


def _unpack(params):
    w = _softmax(params[:4])
    a = params[4:16].reshape(4, 3)
    b = params[16:28].reshape(4, 3)
    return w, a / np.linalg.norm(a, axis=1, keepdims=True), b / np.linalg.norm(b, axis=1, keepdims=True)


def _objective(params) -> float:
    w, a, b = _unpack(params)
    return 36 * np.prod(w) * tetra_volume_signed(*a) * tetra_volume_signed(*b)


def _coordinate_ascent(params, iterations, step=0.5, min_step=1e-9):
    best = abs(_objective(params))
    for _ in range(iterations):
        improved = False
        for i in range(params.size):
            for direction in (1.0, -1.0):
                trial = params.copy()
                trial[i] += direction * step
                val = abs(_objective(trial))
                if val > best:
                    params, best, improved = trial, val, True
                    break
        if not improved:
            step /= 2
            if step < min_step:
                break
    return params, best


def maximize_separable_det(seed=None, iterations: int = 2000, restarts: int = 10) -> tuple[SeparableSpec, float]:
    """Search for the four-term separable state with the largest ``|det(tau)|``.

    Each restart draws random weights and vertices, then runs coordinate
    ascent with step halving on ``|det|`` (at most ``iterations`` sweeps).
    Returns the best spec found and its signed determinant.
    """
    if iterations < 1 or restarts < 1:
        raise ValueError("iterations and restarts must be at least 1")
    rng = np.random.default_rng(seed)
    best_params, best_val = None, -1.0
    for _ in range(restarts):
        start = np.concatenate([rng.normal(0, 0.3, 4), rng.standard_normal(24)])
        params, val = _coordinate_ascent(start, iterations)
        if val > best_val:
            best_params, best_val = params, val
    w, a, b = _unpack(best_params)
    w = w / w.sum()
    spec = SeparableSpec(w, a, b)
    return spec, separable_sinisterness(spec)
