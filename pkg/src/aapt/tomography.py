"""Standard and ancilla-assisted process tomography by linear inversion.

Both schemes measure a 4x4 matrix of Pauli expectation values after the
unknown channel acts and recover the transfer matrix by right-multiplying
with the inverse of the known input matrix:

* SQPT: ``a_out = chi_tilde @ a_in`` with one column per input qubit state;
* AAPT: ``tau_out = chi_tilde @ tau_in`` with a single system-ancilla state.

Measurement uncertainty is modelled as additive Gaussian noise on every
measured entry except the normalisation entry ``[0, 0]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import Channel, apply, chi_from_chi_tilde
from .faithfulness import sinisterness
from .linalg import SINGULAR_TOL, SingularMatrix, condition_number, frobenius_norm, invert
from .states import bloch_to_rho, rho_from_tau, rho_to_bloch, tau_from_rho, validate_density_matrix

SQPT_MIN_DET = 1e-6


@dataclass(frozen=True)
class NoiseModel:
    kind: str = "none"
    sigma: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("none", "gaussian"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError("sigma must be finite and nonnegative")

    @classmethod
    def gaussian(cls, sigma: float, seed=None) -> "NoiseModel":
        return cls("gaussian", sigma, seed)

    @property
    def active(self) -> bool:
        return self.kind == "gaussian" and self.sigma > 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def sample(self, shape, rng: np.random.Generator) -> np.ndarray:
        """Additive error with the ``[..., 0, 0]`` entry pinned to zero."""
        if not self.active:
            return np.zeros(shape)
        delta = rng.normal(0.0, self.sigma, size=shape)
        delta[..., 0, 0] = 0.0
        return delta


NOISELESS = NoiseModel()


def simulate_measurement(rho, noise: NoiseModel = NOISELESS, rng=None) -> np.ndarray:
    """Noisy estimate of ``tau`` for a two-qubit state."""
    tau = tau_from_rho(rho)
    if rng is None:
        rng = noise.rng()
    return tau + noise.sample(tau.shape, rng)


@dataclass(frozen=True)
class SqptInputSet:
    """Four single-qubit probe states; ``a_in`` holds their Bloch 4-vectors as columns."""

    states: tuple

    def __post_init__(self):
        states = tuple(validate_density_matrix(r, dim=2) for r in self.states)
        if len(states) != 4:
            raise ValueError("SQPT needs exactly four input states")
        object.__setattr__(self, "states", states)
        det = abs(np.linalg.det(self.a_in))
        if det <= SQPT_MIN_DET:
            raise SingularMatrix(det, SQPT_MIN_DET)

    @property
    def a_in(self) -> np.ndarray:
        return np.array([np.concatenate([[1.0], rho_to_bloch(r)]) for r in self.states]).T

    @classmethod
    def canonical(cls) -> "SqptInputSet":
        """``|0>, |1>, |+>, |+i>``."""
        return cls.from_bloch([(0, 0, 1), (0, 0, -1), (1, 0, 0), (0, 1, 0)])

    @classmethod
    def from_bloch(cls, vectors: Sequence) -> "SqptInputSet":
        return cls(tuple(bloch_to_rho(v) for v in vectors))


@dataclass(frozen=True)
class ReconstructionResult:
    chi_tilde_hat: np.ndarray
    chi_hat: np.ndarray
    tau_out_observed: np.ndarray
    tau_out_true: np.ndarray
    tau_in: np.ndarray
    chi_tilde_true: np.ndarray
    error_vs_truth: float
    kappa_used: float
    extra: dict = field(default_factory=dict)

    @property
    def delta_tau(self) -> np.ndarray:
        return self.tau_out_observed - self.tau_out_true

    @property
    def delta_chi_tilde(self) -> np.ndarray:
        return self.chi_tilde_hat - self.chi_tilde_true

    @property
    def process_error(self) -> float:
        """Average entry error ``||d chi_tilde||_F / 4``."""
        return frobenius_norm(self.delta_chi_tilde) / 4

    @property
    def state_error(self) -> float:
        return frobenius_norm(self.delta_tau) / 4

    def error_ratio(self) -> float:
        """Relative process error over relative output error.

        Never exceeds the condition number of the input matrix.  ``nan`` when
        the run was noiseless.
        """
        d_tau = frobenius_norm(self.delta_tau)
        if d_tau == 0:
            return math.nan
        rel_chi = frobenius_norm(self.delta_chi_tilde) / frobenius_norm(self.chi_tilde_true)
        rel_tau = d_tau / frobenius_norm(self.tau_out_true)
        return rel_chi / rel_tau

    def to_json(self) -> dict:
        def cplx(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]

        ratio = self.error_ratio()
        return {
            "chi_tilde_hat": self.chi_tilde_hat.tolist(),
            "chi_hat": cplx(self.chi_hat),
            "tau_out_observed": self.tau_out_observed.tolist(),
            "error_vs_truth": self.error_vs_truth,
            "process_error": self.process_error,
            "state_error": self.state_error,
            "error_ratio": None if math.isnan(ratio) else ratio,
            "kappa_used": self.kappa_used,
        }


def _reconstruct(observed, true_out, inputs, inputs_inv, truth, kappa) -> ReconstructionResult:
    ct_hat = observed @ inputs_inv
    return ReconstructionResult(
        chi_tilde_hat=ct_hat,
        chi_hat=chi_from_chi_tilde(ct_hat),
        tau_out_observed=observed,
        tau_out_true=true_out,
        tau_in=inputs,
        chi_tilde_true=truth,
        error_vs_truth=frobenius_norm(ct_hat - truth),
        kappa_used=kappa,
    )


def sqpt(channel: Channel, inputs: SqptInputSet | None = None, noise: NoiseModel = NOISELESS, rng=None) -> ReconstructionResult:
    """Standard process tomography with four single-qubit probes."""
    if inputs is None:
        inputs = SqptInputSet.canonical()
    if rng is None:
        rng = noise.rng()
    a_in = inputs.a_in
    a_out = np.array([np.concatenate([[1.0], rho_to_bloch(apply(channel, r))]) for r in inputs.states]).T
    observed = a_out + noise.sample(a_out.shape, rng)
    return _reconstruct(observed, a_out, a_in, invert(a_in, SQPT_MIN_DET), channel.chi_tilde(), condition_number(a_in))


def _invert_input(tau_in, tol):
    det = abs(sinisterness(tau_in))
    if det <= tol:
        raise SingularMatrix(det, tol)
    return invert(tau_in, tol=0.0)


def aapt(tau_in, channel: Channel, noise: NoiseModel = NOISELESS, tol: float = SINGULAR_TOL, rng=None) -> ReconstructionResult:
    """Ancilla-assisted process tomography from one two-qubit input state.

    Raises
    ------
    SingularMatrix
        If ``|det(tau_in)| <= tol``: the input state is not faithful.
    NotAState
        If ``tau_in`` does not describe a physical state.
    """
    tau_in = np.asarray(tau_in, dtype=float)
    inv = _invert_input(tau_in, tol)
    rho_out = apply(channel, rho_from_tau(tau_in))
    tau_out = tau_from_rho(rho_out)
    if rng is None:
        rng = noise.rng()
    observed = tau_out + noise.sample(tau_out.shape, rng)
    return _reconstruct(observed, tau_out, tau_in, inv, channel.chi_tilde(), condition_number(tau_in))


def aapt_batch(tau_in, channel: Channel, noise: NoiseModel, runs: int, tol: float = SINGULAR_TOL) -> list[ReconstructionResult]:
    """``runs`` independent noisy AAPT repetitions sharing one noiseless simulation.

    Run ``k`` draws its noise from child ``k`` of ``SeedSequence(noise.seed)``,
    so results do not depend on batch size.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    tau_in = np.asarray(tau_in, dtype=float)
    inv = _invert_input(tau_in, tol)
    tau_out = tau_from_rho(apply(channel, rho_from_tau(tau_in)))
    truth = channel.chi_tilde()
    kappa = condition_number(tau_in)
    children = np.random.SeedSequence(noise.seed).spawn(runs)
    results = []
    for child in children:
        observed = tau_out + noise.sample(tau_out.shape, np.random.default_rng(child))
        results.append(_reconstruct(observed, tau_out, tau_in, inv, truth, kappa))
    return results


@dataclass(frozen=True)
class ErrorSummary:
    runs: int
    mean_process_error: float
    mean_state_error: float
    mean_ratio: float
    max_ratio: float

    def as_dict(self) -> dict:
        return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in self.__dict__.items()}


def error_stats(truth, runs: Sequence[ReconstructionResult]) -> ErrorSummary:
    """Aggregate errors of repeated reconstructions of the same channel.

    ``truth`` replaces each run's own reference transfer matrix.  Ratios are
    averaged over the noisy runs only; both ratio fields are ``nan`` if none.
    """
    if not runs:
        raise ValueError("error_stats needs at least one run")
    truth = np.asarray(truth, dtype=float)
    proc, state, ratios = [], [], []
    for r in runs:
        d_chi = frobenius_norm(r.chi_tilde_hat - truth)
        d_tau = frobenius_norm(r.delta_tau)
        proc.append(d_chi / 4)
        state.append(d_tau / 4)
        if d_tau > 0:
            ratios.append((d_chi / frobenius_norm(truth)) / (d_tau / frobenius_norm(r.tau_out_true)))
    return ErrorSummary(
        runs=len(runs),
        mean_process_error=float(np.mean(proc)),
        mean_state_error=float(np.mean(state)),
        mean_ratio=float(np.mean(ratios)) if ratios else math.nan,
        max_ratio=float(np.max(ratios)) if ratios else math.nan,
    )
