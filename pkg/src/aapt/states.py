"""Two-qubit states and their Pauli correlation matrix.

A two-qubit density matrix is a complex 4x4 array.  Its correlation matrix
``tau`` is the real 4x4 array of Pauli expectation values

    tau[i, j] = Tr[rho (sigma_i (x) sigma_j)],   i, j = 0..3,

with ``sigma_0`` the identity, so ``tau[0, 0] == 1`` for every state and the
inverse map is ``rho = 1/4 sum_ij tau[i, j] sigma_i (x) sigma_j``.  Row index
is the system qubit, column index the ancilla.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
PURITY_TOL = 1e-8

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.array([I2, SX, SY, SZ])

# PAULI_PAIRS[i, j] = sigma_i (x) sigma_j
PAULI_PAIRS = np.einsum("iab,jcd->ijacbd", PAULIS, PAULIS).reshape(4, 4, 4, 4)

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")

_BELL_VECTORS = {
    "phi+": np.array([1, 0, 0, 1]) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1]) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0]) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0]) / np.sqrt(2),
}

# Regular tetrahedron inscribed in the unit sphere.
TETRAHEDRON = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)


class NotAState(ValueError):
    """The matrix (or correlation matrix) does not describe a physical state."""


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def validate_density_matrix(rho, dim: int | None = None) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return ``rho`` as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NotAState(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise NotAState(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NotAState("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise NotAState("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise NotAState(f"trace is {tr.real:.12g}, expected 1")
    lam_min = np.linalg.eigvalsh(rho)[0]
    if lam_min < -PSD_TOL:
        raise NotAState(f"density matrix has negative eigenvalue {lam_min:.3e}")
    return rho


def validate_tau(tau) -> np.ndarray:
    tau = np.asarray(tau, dtype=float)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
        raise ValueError(f"tau must be square, got shape {tau.shape}")
    if abs(tau[0, 0] - 1) > TRACE_TOL:
        raise NotAState(f"tau[0, 0] = {tau[0, 0]:.12g}, expected 1")
    return tau


def tau_from_rho(rho) -> np.ndarray:
    """Pauli correlation matrix of a two-qubit density matrix."""
    rho = validate_density_matrix(rho, dim=4)
    return np.einsum("ijab,ba->ij", PAULI_PAIRS, rho).real


def rho_from_tau(tau) -> np.ndarray:
    """Density matrix from a 4x4 correlation matrix.

    Raises ``NotAState`` if the result has an eigenvalue below ``-1e-9``.
    """
    tau = validate_tau(tau)
    if tau.shape != (4, 4):
        raise ValueError(f"two-qubit tau must be 4x4, got {tau.shape}")
    rho = np.einsum("ij,ijab->ab", tau, PAULI_PAIRS) / 4
    return validate_density_matrix(rho, dim=4)


def bloch_to_rho(vector) -> np.ndarray:
    """Single-qubit state ``(I + v.sigma) / 2``."""
    v = np.asarray(vector, dtype=float)
    if v.shape != (3,):
        raise ValueError("Bloch vector must have three components")
    if np.linalg.norm(v) > 1 + 1e-10:
        raise NotAState(f"Bloch vector norm {np.linalg.norm(v):.6g} exceeds 1")
    return (I2 + np.einsum("k,kab->ab", v, PAULIS[1:])) / 2


def rho_to_bloch(rho) -> np.ndarray:
    rho = validate_density_matrix(rho, dim=2)
    return np.einsum("kab,ba->k", PAULIS[1:], rho).real


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise NotAState("zero state vector")
    psi = psi / norm
    return np.outer(psi, psi.conj())


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def bell_state(kind: str = "phi+") -> np.ndarray:
    """One of the four Bell states ``phi+``, ``phi-``, ``psi+``, ``psi-``."""
    try:
        return pure_state(_BELL_VECTORS[kind])
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}; choose from {BELL_KINDS}") from None


def werner_state(p: float, kind: str = "phi+") -> np.ndarray:
    """Mixture ``p |Bell><Bell| + (1 - p) I/4``; separable for ``p <= 1/3``."""
    if not 0 <= p <= 1:
        raise ValueError(f"Werner weight must lie in [0, 1], got {p}")
    return p * bell_state(kind) + (1 - p) * np.eye(4) / 4


def x_state(s) -> np.ndarray:
    """State whose correlation matrix is ``diag(1, s1, s2, s3)``."""
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise ValueError("x_state needs three diagonal correlations")
    return rho_from_tau(np.diag(np.concatenate([[1.0], s])))


@dataclass(frozen=True)
class SeparableSpec:
    """Convex mixture of pure product states, one Bloch-vector pair per term."""

    weights: np.ndarray
    system_vertices: np.ndarray
    ancilla_vertices: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        a = np.asarray(self.system_vertices, dtype=float)
        b = np.asarray(self.ancilla_vertices, dtype=float)
        if w.ndim != 1 or a.shape != (w.size, 3) or b.shape != (w.size, 3):
            raise ValueError("weights and vertex arrays have inconsistent shapes")
        if np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")
        for name, v in (("system", a), ("ancilla", b)):
            if np.max(np.abs(np.linalg.norm(v, axis=1) - 1)) > 1e-10:
                raise ValueError(f"{name} vertices must be unit Bloch vectors")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "system_vertices", a)
        object.__setattr__(self, "ancilla_vertices", b)

    def tau(self) -> np.ndarray:
        """Correlation matrix, ``sum_n P_n (1, a_n)(1, b_n)^T``."""
        ones = np.ones((self.weights.size, 1))
        a = np.hstack([ones, self.system_vertices])
        b = np.hstack([ones, self.ancilla_vertices])
        return np.einsum("n,ni,nj->ij", self.weights, a, b)


def separable_from_spec(spec: SeparableSpec) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for p, a, b in zip(spec.weights, spec.system_vertices, spec.ancilla_vertices):
        rho += p * np.kron(bloch_to_rho(a), bloch_to_rho(b))
    return validate_density_matrix(rho, dim=4)


def optimal_separable_spec(orientation: int = -1) -> SeparableSpec:
    """Equal-weight mixture on a regular tetrahedron.

    The ancilla vertices are the system vertices times ``orientation``: ``-1``
    mirrors them (negative determinant, ``tau = diag(1, -1/3, -1/3, -1/3)``),
    ``+1`` copies them (``tau = diag(1, 1/3, 1/3, 1/3)``).
    """
    if orientation not in (-1, 1):
        raise ValueError("orientation must be +1 or -1")
    return SeparableSpec(np.full(4, 0.25), TETRAHEDRON, orientation * TETRAHEDRON)


def random_pure(seed=None) -> np.ndarray:
    """Haar-random pure two-qubit state."""
    rng = _rng(seed)
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return pure_state(psi)


def _random_unit_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_separable(seed=None, terms: int = 4) -> SeparableSpec:
    """Weights uniform on the simplex, vertices uniform on the sphere."""
    rng = _rng(seed)
    w = rng.dirichlet(np.ones(terms))
    w = w / w.sum()
    return SeparableSpec(w, _random_unit_vectors(rng, terms), _random_unit_vectors(rng, terms))


def random_mixed(seed=None, rank: int = 4) -> np.ndarray:
    """Random two-qubit state from the Hilbert-Schmidt (Ginibre) ensemble."""
    rng = _rng(seed)
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def concurrence_pure(rho) -> float:
    """Concurrence ``2|ad - bc|`` of a pure two-qubit state."""
    rho = validate_density_matrix(rho, dim=4)
    if abs(purity(rho) - 1) > PURITY_TOL:
        raise ValueError("concurrence_pure requires a pure state")
    _, vecs = np.linalg.eigh(rho)
    a, b, c, d = vecs[:, -1]
    return float(min(1.0, 2 * abs(a * d - b * c)))
