"""Single-qubit channels as Kraus sets, with process-matrix conversions.

Conventions
-----------
* ``chi`` is the Pauli-basis process matrix, ``E(rho) = sum_jk chi[j, k] s_j rho s_k^dag``.
* ``chi_tilde`` is the Pauli transfer matrix acting on Bloch 4-vectors
  ``(1, x, y, z)``: ``chi_tilde[m, i] = 1/2 Tr[s_m E(s_i)]``.  In terms of the
  four-Pauli trace tensor ``B[j, i, k, m] = Tr[s_j s_i s_k s_m]`` this is
  ``chi_tilde[m, i] = 1/2 sum_jk chi[j, k] B[j, i, k, m]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import DimensionError
from .states import PAULIS, validate_density_matrix

KRAUS_TOL = 1e-10
IMAG_TOL = 1e-8
MAX_CONVERSION_COND = 1e8

CHANNEL_KINDS = (
    "identity",
    "rotation",
    "pauli",
    "bit_flip",
    "phase_flip",
    "bit_phase_flip",
    "depolarizing",
    "amplitude_damping",
    "phase_damping",
)


class InconsistentChi(ValueError):
    """A process matrix that does not map to a real transfer matrix."""


@dataclass(frozen=True)
class Channel:
    """CPTP map on one qubit, stored as Kraus operators."""

    kraus: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (2, 2):
                raise DimensionError(f"Kraus operators must be 2x2, got {k.shape}")
        completeness = sum(k.conj().T @ k for k in ops)
        err = np.max(np.abs(completeness - np.eye(2)))
        if err > KRAUS_TOL:
            raise ValueError(f"Kraus operators are not trace preserving (error {err:.2e})")
        object.__setattr__(self, "kraus", ops)

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def chi(self) -> np.ndarray:
        return kraus_to_chi(self.kraus)

    def chi_tilde(self) -> np.ndarray:
        return chi_tilde_from_chi(self.chi())


def apply(channel: Channel, rho) -> np.ndarray:
    """Apply ``channel`` to a qubit state, or to the first (system) qubit of a
    two-qubit state, i.e. ``(E (x) I)(rho)``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (2, 2):
        ops = channel.kraus
    elif rho.shape == (4, 4):
        ops = [np.kron(k, np.eye(2)) for k in channel.kraus]
    else:
        raise DimensionError(f"cannot apply a qubit channel to shape {rho.shape}")
    out = sum(k @ rho @ k.conj().T for k in ops)
    return validate_density_matrix(out)


@lru_cache(maxsize=None)
def _b_tensor() -> np.ndarray:
    b = np.einsum("jab,ibc,kcd,mda->jikm", PAULIS, PAULIS, PAULIS, PAULIS)
    b.flags.writeable = False
    return b


def b_tensor() -> np.ndarray:
    """``B[j, i, k, m] = Tr[s_j s_i s_k s_m]`` for the Paulis ``s_0 = I, s_1..s_3``."""
    return _b_tensor()


def kraus_to_chi(kraus) -> np.ndarray:
    # A = sum_j c_j s_j with c_j = Tr[s_j A] / 2
    coeffs = np.array([np.einsum("jab,ba->j", PAULIS, np.asarray(k, dtype=complex)) / 2 for k in kraus])
    return coeffs.T @ coeffs.conj()


def chi_tilde_from_chi(chi) -> np.ndarray:
    """Transfer matrix from the process matrix by contraction with ``B``."""
    chi = np.asarray(chi, dtype=complex)
    if chi.shape != (4, 4):
        raise DimensionError(f"chi must be 4x4, got {chi.shape}")
    ct = np.einsum("jk,jikm->mi", chi, _b_tensor()) / 2
    residue = np.max(np.abs(ct.imag))
    if residue > IMAG_TOL:
        raise InconsistentChi(f"chi_tilde has imaginary part {residue:.2e}")
    return ct.real


def chi_tilde_direct(channel: Channel) -> np.ndarray:
    """Transfer matrix by pushing each Pauli through the Kraus sum."""
    ct = np.empty((4, 4))
    for i, s_i in enumerate(PAULIS):
        out = sum(k @ s_i @ k.conj().T for k in channel.kraus)
        ct[:, i] = np.einsum("mab,ba->m", PAULIS, out).real / 2
    return ct


def _hermitian_basis() -> np.ndarray:
    basis = []
    for j in range(4):
        for k in range(4):
            h = np.zeros((4, 4), dtype=complex)
            if j == k:
                h[j, j] = 1
            elif j < k:
                h[j, k] = h[k, j] = 1
            else:
                h[k, j] = -1j
                h[j, k] = 1j
            basis.append(h)
    return np.array(basis)


@lru_cache(maxsize=None)
def _chi_solver():
    basis = _hermitian_basis()
    forward = np.array([chi_tilde_from_chi(h).ravel() for h in basis]).T
    cond = np.linalg.cond(forward)
    if cond > MAX_CONVERSION_COND:
        raise np.linalg.LinAlgError(f"chi <-> chi_tilde map is ill conditioned ({cond:.2e})")
    inverse = np.linalg.inv(forward)
    inverse.flags.writeable = False
    return basis, inverse


def chi_from_chi_tilde(chi_tilde) -> np.ndarray:
    """Hermitian process matrix reproducing a given transfer matrix.

    The contraction with ``B`` is a real-linear bijection between Hermitian
    4x4 matrices and real 4x4 matrices; this solves it over the 16 real
    coordinates of ``chi``.
    """
    ct = np.asarray(chi_tilde, dtype=float)
    if ct.shape != (4, 4):
        raise DimensionError(f"chi_tilde must be 4x4, got {ct.shape}")
    basis, inverse = _chi_solver()
    params = inverse @ ct.ravel()
    return np.einsum("r,rab->ab", params, basis)


def _check_prob(name, value, upper=1.0):
    if not 0 <= value <= upper:
        raise ValueError(f"{name} must lie in [0, {upper:g}], got {value}")


_AXES = {"x": 1, "y": 2, "z": 3}


def rotation(axis, angle: float) -> Channel:
    """Unitary ``exp(-i angle/2 n.sigma)``; ``axis`` is ``'x'|'y'|'z'`` or a 3-vector."""
    if isinstance(axis, str):
        n = np.zeros(3)
        n[_AXES[axis.lower()] - 1] = 1.0
    else:
        n = np.asarray(axis, dtype=float)
        if n.shape != (3,) or np.linalg.norm(n) == 0:
            raise ValueError("rotation axis must be a nonzero 3-vector")
        n = n / np.linalg.norm(n)
    u = np.cos(angle / 2) * PAULIS[0] - 1j * np.sin(angle / 2) * np.einsum("k,kab->ab", n, PAULIS[1:])
    return Channel((u,))


def named_channel(kind: str, **params) -> Channel:
    """Build one of the standard single-qubit channels.

    ``kind`` is one of :data:`CHANNEL_KINDS`.  Parameters: ``rotation(axis,
    angle)``, ``pauli(index)``, ``bit_flip(p)``, ``phase_flip(p)``,
    ``bit_phase_flip(p)``, ``depolarizing(p)`` with ``p`` in ``[0, 4/3]``,
    ``amplitude_damping(gamma)``, ``phase_damping(lam)``.
    """
    if kind == "identity":
        return Channel((PAULIS[0],))
    if kind == "rotation":
        return rotation(params.get("axis", "z"), float(params["angle"]))
    if kind == "pauli":
        index = params["index"]
        index = _AXES.get(index, index) if isinstance(index, str) else int(index)
        if index not in (0, 1, 2, 3):
            raise ValueError(f"Pauli index must be 0..3, got {index}")
        return Channel((PAULIS[index],))
    if kind in ("bit_flip", "phase_flip", "bit_phase_flip"):
        p = float(params["p"])
        _check_prob("p", p)
        s = PAULIS[{"bit_flip": 1, "bit_phase_flip": 2, "phase_flip": 3}[kind]]
        return Channel((np.sqrt(1 - p) * PAULIS[0], np.sqrt(p) * s))
    if kind == "depolarizing":
        p = float(params["p"])
        _check_prob("p", p, 4 / 3)
        ops = [np.sqrt(1 - 3 * p / 4) * PAULIS[0]] + [np.sqrt(p / 4) * s for s in PAULIS[1:]]
        return Channel(tuple(ops))
    if kind == "amplitude_damping":
        g = float(params["gamma"])
        _check_prob("gamma", g)
        return Channel((np.array([[1, 0], [0, np.sqrt(1 - g)]]), np.array([[0, np.sqrt(g)], [0, 0]])))
    if kind == "phase_damping":
        lam = float(params["lam"])
        _check_prob("lam", lam)
        return Channel((np.array([[1, 0], [0, np.sqrt(1 - lam)]]), np.array([[0, 0], [0, np.sqrt(lam)]])))
    raise ValueError(f"unknown channel kind {kind!r}; choose from {CHANNEL_KINDS}")


def random_channel(seed=None, env_dim: int | None = None) -> Channel:
    """Random CPTP map from a random Stinespring isometry.

    A Ginibre ``2r x 2`` matrix is orthonormalised by QR into an isometry
    ``V``; the Kraus operators are its ``r`` stacked 2x2 blocks.  ``r`` (the
    environment dimension, 1..4) is drawn at random unless given.
    """
    rng = np.random.default_rng(seed)
    r = int(rng.integers(1, 5)) if env_dim is None else int(env_dim)
    if not 1 <= r <= 4:
        raise ValueError("environment dimension must be between 1 and 4")
    g = rng.standard_normal((2 * r, 2)) + 1j * rng.standard_normal((2 * r, 2))
    q, rr = np.linalg.qr(g)
    q = q * (np.diag(rr) / np.abs(np.diag(rr)))
    return Channel(tuple(q[2 * k : 2 * k + 2] for k in range(r)))
