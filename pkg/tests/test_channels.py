import itertools

import numpy as np
import pytest

from aapt import channels as ch
from aapt import states as st
from oracles import PAULI, transfer_matrix

NAMED = [
    ("identity", {}),
    ("rotation", {"axis": "x", "angle": 0.7}),
    ("rotation", {"axis": [1, 2, -1], "angle": 2.1}),
    ("pauli", {"index": 2}),
    ("bit_flip", {"p": 0.2}),
    ("phase_flip", {"p": 0.4}),
    ("bit_phase_flip", {"p": 0.1}),
    ("depolarizing", {"p": 0.3}),
    ("amplitude_damping", {"gamma": 0.35}),
    ("phase_damping", {"lam": 0.6}),
]


def test_apply_identity_and_full_depolarizing():
    rho1 = st.bloch_to_rho([0.3, -0.2, 0.5])
    np.testing.assert_allclose(ch.apply(ch.named_channel("identity"), rho1), rho1, atol=1e-15)
    rho2 = st.random_mixed(0)
    np.testing.assert_allclose(ch.apply(ch.named_channel("identity"), rho2), rho2, atol=1e-15)
    np.testing.assert_allclose(ch.apply(ch.named_channel("depolarizing", p=1.0), rho1), np.eye(2) / 2, atol=1e-15)


@pytest.mark.parametrize("gamma", [0.0, 0.25, 1.0])
def test_amplitude_damping_on_excited_state(gamma):
    out = ch.apply(ch.named_channel("amplitude_damping", gamma=gamma), np.diag([0.0, 1.0]))
    np.testing.assert_allclose(out, np.diag([gamma, 1 - gamma]), atol=1e-15)


def test_amplitude_damping_full_resets():
    channel = ch.named_channel("amplitude_damping", gamma=1.0)
    for v in ([0, 0, -1], [1, 0, 0], [0.1, 0.2, 0.3]):
        np.testing.assert_allclose(channel(st.bloch_to_rho(v)), np.diag([1.0, 0.0]), atol=1e-15)


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        ch.apply(ch.named_channel("identity"), np.eye(3) / 3)


def test_b_tensor_entries():
    b = ch.b_tensor()
    assert b[0, 0, 0, 0] == 2
    assert b[1, 1, 2, 3] == 0
    assert b[1, 2, 3, 0] == 2j
    for j, i, k, m in itertools.product(range(4), repeat=4):
        assert b[j, i, k, m] == np.trace(PAULI[j] @ PAULI[i] @ PAULI[k] @ PAULI[m])
    assert set(np.unique(b)) <= {0, 2, -2, 2j, -2j}


def test_chi_tilde_examples():
    chi = np.zeros((4, 4))
    chi[0, 0] = 1
    np.testing.assert_allclose(ch.chi_tilde_from_chi(chi), np.eye(4), atol=1e-15)
    for p in (0.0, 0.3, 1.0):
        depol = ch.named_channel("depolarizing", p=p)
        expected = transfer_matrix(depol.kraus)
        np.testing.assert_allclose(expected, np.diag([1, 1 - p, 1 - p, 1 - p]), atol=1e-15)
        np.testing.assert_allclose(depol.chi_tilde(), expected, atol=1e-15)
    np.testing.assert_allclose(ch.named_channel("pauli", index=1).chi_tilde(), np.diag([1.0, 1, -1, -1]), atol=1e-15)


def test_rotation_z_pi():
    channel = ch.named_channel("rotation", axis="z", angle=np.pi)
    np.testing.assert_allclose(channel.kraus[0], -1j * PAULI[3], atol=1e-15)
    np.testing.assert_allclose(channel.chi_tilde(), np.diag([1.0, -1, -1, 1]), atol=1e-15)


def test_inconsistent_chi_rejected():
    chi = np.zeros((4, 4), dtype=complex)
    chi[0, 1] = 1.0  # not Hermitian: the transfer matrix picks up an imaginary part
    with pytest.raises(ch.InconsistentChi):
        ch.chi_tilde_from_chi(chi)


def test_chi_from_chi_tilde_examples():
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    np.testing.assert_allclose(ch.chi_from_chi_tilde(np.eye(4)), expected, atol=1e-14)
    p = 0.3
    chi = ch.chi_from_chi_tilde(np.diag([1, 1 - p, 1 - p, 1 - p]))
    np.testing.assert_allclose(chi, np.diag([1 - 3 * p / 4, p / 4, p / 4, p / 4]), atol=1e-14)
    np.testing.assert_allclose(chi, ch.named_channel("depolarizing", p=p).chi(), atol=1e-14)


def test_named_channel_parameters():
    np.testing.assert_allclose(ch.named_channel("depolarizing", p=0).chi_tilde(), np.eye(4), atol=1e-15)
    for kind, params in NAMED:
        channel = ch.named_channel(kind, **params)
        total = sum(k.conj().T @ k for k in channel.kraus)
        np.testing.assert_allclose(total, np.eye(2), atol=1e-10)
    for kind, params in [
        ("depolarizing", {"p": 1.5}),
        ("amplitude_damping", {"gamma": -0.1}),
        ("bit_flip", {"p": 2}),
        ("pauli", {"index": 5}),
        ("nonsense", {}),
    ]:
        with pytest.raises(ValueError):
            ch.named_channel(kind, **params)


def test_channel_rejects_non_trace_preserving():
    with pytest.raises(ValueError):
        ch.Channel((0.9 * np.eye(2),))


@pytest.mark.parametrize("kind, params", NAMED)
def test_named_channels_both_routes_agree(kind, params):
    channel = ch.named_channel(kind, **params)
    np.testing.assert_allclose(channel.chi_tilde(), transfer_matrix(channel.kraus), atol=1e-12)


def test_random_channel_invariants():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        channel = ch.random_channel(rng)
        total = sum(k.conj().T @ k for k in channel.kraus)
        np.testing.assert_allclose(total, np.eye(2), atol=1e-10)
        chi = channel.chi()
        np.testing.assert_allclose(chi, chi.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(chi)[0] >= -1e-9
        tp = sum(chi[j, k] * PAULI[k].conj().T @ PAULI[j] for j in range(4) for k in range(4))
        np.testing.assert_allclose(tp, np.eye(2), atol=1e-9)
        ct = channel.chi_tilde()
        np.testing.assert_allclose(ct, transfer_matrix(channel.kraus), atol=1e-10)
        np.testing.assert_allclose(ct, ch.chi_tilde_direct(channel), atol=1e-10)
        np.testing.assert_allclose(ct[0], [1, 0, 0, 0], atol=1e-10)
        np.testing.assert_allclose(ch.chi_tilde_from_chi(ch.chi_from_chi_tilde(ct)), ct, atol=1e-8)
        np.testing.assert_allclose(ch.chi_from_chi_tilde(ct), chi, atol=1e-8)


def test_random_channel_is_seeded():
    a, b = ch.random_channel(3), ch.random_channel(3)
    assert all(np.array_equal(x, y) for x, y in zip(a.kraus, b.kraus))
    assert len(ch.random_channel(0, env_dim=4).kraus) == 4


def test_bipartite_action_is_transfer_matrix_product():
    rng = np.random.default_rng(12)
    for _ in range(300):
        channel = ch.random_channel(rng)
        rho = st.random_mixed(rng)
        tau_out = st.tau_from_rho(ch.apply(channel, rho))
        np.testing.assert_allclose(tau_out, channel.chi_tilde() @ st.tau_from_rho(rho), atol=1e-10)
