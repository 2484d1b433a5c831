"""Simulation and analysis of ancilla-assisted quantum process tomography.

One system qubit is correlated with one ancilla qubit; the unknown channel is
recovered from the Pauli correlation matrix of the output by inverting the
correlation matrix ``tau`` of the input.  The determinant of ``tau`` (the
Sinisterness) decides whether that is possible and its condition number how
much measurement error is amplified.
"""
from .channels import Channel, b_tensor, chi_from_chi_tilde, chi_tilde_from_chi, named_channel, random_channel
from .faithfulness import (
    FaithfulnessReport,
    XReduction,
    analyze,
    condition_number,
    kappa_lower_bound,
    optimal_x_kappa,
    sinisterness,
    x_reduce,
)
from .geometry import maximize_separable_det, qubit_scaling, regular_simplex, separable_sinisterness, simplex_volume
from .linalg import SingularMatrix
from .states import (
    NotAState,
    SeparableSpec,
    bell_state,
    concurrence_pure,
    random_mixed,
    random_pure,
    random_separable,
    rho_from_tau,
    separable_from_spec,
    tau_from_rho,
    werner_state,
    x_state,
)
from .tomography import NoiseModel, SqptInputSet, aapt, aapt_batch, error_stats, sqpt

__version__ = "0.1.0"
