import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hst

from aapt import faithfulness as fa
from aapt import states as st
from aapt.linalg import determinant, invert

BELL_TAU = np.diag([1.0, 1, -1, 1])
WERNER_TAU = np.diag([1, 1 / 3, -1 / 3, 1 / 3])


def random_taus(seed, count):
    rng = np.random.default_rng(seed)
    for k in range(count):
        pick = k % 3
        if pick == 0:
            rho = st.random_mixed(rng)
        elif pick == 1:
            rho = st.random_pure(rng)
        else:
            rho = st.separable_from_spec(st.random_separable(rng))
        yield st.tau_from_rho(rho)


def test_sinisterness_examples():
    assert fa.sinisterness(BELL_TAU) == pytest.approx(-1, abs=1e-15)
    assert fa.sinisterness(np.diag([1.0, 0, 0, 0])) == 0.0
    tau = st.optimal_separable_spec().tau()
    assert fa.sinisterness(tau) == pytest.approx(-1 / 27, abs=1e-10)
    assert fa.sinisterness(st.optimal_separable_spec(1).tau()) == pytest.approx(1 / 27, abs=1e-10)


def test_sinisterness_equals_full_determinant():
    for tau in random_taus(0, 3000):
        assert abs(fa.sinisterness(tau) - determinant(tau)) < 1e-12


def test_sinisterness_range_for_physical_states():
    for tau in random_taus(1, 3000):
        assert -1 - 1e-12 <= fa.sinisterness(tau) <= 1 / 27 + 1e-12


def test_condition_number_examples():
    assert fa.condition_number(BELL_TAU) == pytest.approx(1, abs=1e-12)
    assert fa.condition_number(WERNER_TAU) == pytest.approx(3, abs=1e-12)
    assert fa.condition_number(np.diag([1.0, 0, 0, 0])) == math.inf


def test_optimal_x_kappa():
    assert fa.optimal_x_kappa(1.0) == 1.0
    assert fa.optimal_x_kappa(1 / 27) == pytest.approx(3, rel=1e-14)
    assert fa.optimal_x_kappa(15.0**-15, m=16) == pytest.approx(15, rel=1e-12)
    assert fa.optimal_x_kappa(0.0) == math.inf
    with pytest.raises(ValueError):
        fa.optimal_x_kappa(2.0)


def test_kappa_lower_bound_examples():
    assert fa.kappa_lower_bound(BELL_TAU) == pytest.approx(1, abs=1e-12)
    assert fa.kappa_lower_bound(np.diag([1.0, 0.5, 0, 0.5])) == math.inf


@given(hst.lists(hst.floats(0.01, 1.0), min_size=3, max_size=3), hst.lists(hst.booleans(), min_size=3, max_size=3))
def test_kappa_bounds_for_diagonal_tau(mags, flips):
    s = np.array(mags) * np.where(flips, -1, 1)
    tau = np.diag(np.concatenate([[1.0], s]))
    kappa = fa.condition_number(tau)
    assert kappa >= fa.kappa_lower_bound(tau) * (1 - 1e-10)
    # diagonal tau with lambda_1 = 1: the optimal-X value is a lower bound too
    assert kappa >= fa.optimal_x_kappa(abs(np.prod(s))) * (1 - 1e-10)


def test_optimal_x_kappa_attained_only_for_equal_values():
    for u in (0.1, 1 / 3, 0.8):
        tau = np.diag([1, -u, u, u])
        assert fa.condition_number(tau) == pytest.approx(fa.optimal_x_kappa(u**3), rel=1e-12)
    tau = np.diag([1, 0.2, 0.4, 0.3])
    assert fa.condition_number(tau) > fa.optimal_x_kappa(0.2 * 0.4 * 0.3) + 1e-3


def test_kappa_lower_bound_random_states():
    for tau in random_taus(2, 10_000):
        if abs(determinant(tau)) > 1e-12:
            assert fa.condition_number(tau) >= fa.kappa_lower_bound(tau) * (1 - 1e-10)


def test_x_reduce_diagonal_input():
    red = fa.x_reduce(np.diag([1, 0.1, -0.3, 0.2]))
    np.testing.assert_allclose(red.s, [0.3, 0.2, -0.1], atol=1e-15)
    np.testing.assert_allclose(red.a, 0, atol=0)
    np.testing.assert_allclose(red.b, 0, atol=0)


def test_x_reduce_bell():
    red = fa.x_reduce(BELL_TAU)
    np.testing.assert_allclose(np.abs(red.s), [1, 1, 1], atol=1e-14)
    assert np.prod(red.s) == pytest.approx(-1, abs=1e-14)
    assert red.s[0] >= 0 and red.s[1] >= 0


def test_x_reduce_random_states():
    for tau in random_taus(3, 1000):
        red = fa.x_reduce(tau)
        assert abs(determinant(red.core) - fa.sinisterness(tau)) < 1e-12
        assert abs(abs(np.prod(red.s)) - abs(determinant(red.core))) < 1e-10
        assert red.s[0] >= 0 and red.s[1] >= 0
        np.testing.assert_allclose(red.left_rotation.T @ np.diag(red.s) @ red.right_rotation, red.core, atol=1e-10)
        for rot in (red.left_rotation, red.right_rotation):
            np.testing.assert_allclose(rot @ rot.T, np.eye(3), atol=1e-12)
            assert np.linalg.det(rot) == pytest.approx(1.0)
        np.testing.assert_allclose(red.reconstruct(tau), red.tau_x, atol=1e-10)
        r, l = red.elimination_matrices(tau)
        assert np.linalg.det(r) == 1.0 and np.linalg.det(l) == 1.0


def test_isotropic_states_share_singular_values_with_x_form():
    rng = np.random.default_rng(4)
    checked = 0
    while checked < 300:
        tau = np.eye(4)
        tau[1:, 1:] = rng.uniform(-0.6, 0.6, (3, 3))
        try:
            st.rho_from_tau(tau)
        except st.NotAState:
            continue
        checked += 1
        red = fa.x_reduce(tau)
        expected = np.sort(np.concatenate([[1.0], np.abs(red.s)]))
        np.testing.assert_allclose(np.sort(np.linalg.svd(tau, compute_uv=False)), expected, atol=1e-12)


def test_frobenius_identity_examples():
    s = np.array([0.2, -0.5, 0.1])
    lhs, rhs, res = fa.frobenius_identity_check(np.diag(np.concatenate([[1.0], s])))
    assert lhs == pytest.approx(1 + s @ s) and rhs == pytest.approx(1 + s @ s) and res < 1e-15
    product = np.zeros((4, 4))
    product[0, 0] = product[0, 3] = product[3, 0] = product[3, 3] = 1
    red = fa.x_reduce(product)
    np.testing.assert_allclose(red.s, 0, atol=1e-15)
    lhs, rhs, res = fa.frobenius_identity_check(product)
    # 4 = ||tau_x||^2 + |a|^2 + |b|^2 + |a|^2 |b|^2 = 1 + 1 + 1 + 1
    assert lhs == 4.0 and rhs == pytest.approx(4.0) and res < 1e-14


def test_frobenius_identity_random_states():
    for tau in random_taus(5, 1000):
        lhs, rhs, res = fa.frobenius_identity_check(tau)
        assert lhs == pytest.approx(np.linalg.norm(tau, "fro") ** 2, rel=1e-14)
        assert res < 1e-10


def perturbed_x_states(seed, count, radius=0.1):
    """Physical tau with core diag(s) and local vectors of norm <= radius."""
    rng = np.random.default_rng(seed)
    while count:
        s = rng.uniform(-1, 1, 3)
        a = rng.standard_normal(3)
        b = rng.standard_normal(3)
        a *= radius * rng.random() / np.linalg.norm(a)
        b *= radius * rng.random() / np.linalg.norm(b)
        tau = np.eye(4)
        tau[1:, 0], tau[0, 1:] = a, b
        tau[1:, 1:] = np.diag(s) + np.outer(a, b)
        try:
            st.rho_from_tau(tau)
        except st.NotAState:
            continue
        count -= 1
        yield tau, s


def test_frobenius_norm_exceeds_x_form_near_isotropic():
    for tau, s in perturbed_x_states(6, 2000):
        tau_x = np.diag(np.concatenate([[1.0], s]))
        assert np.linalg.norm(tau) >= np.linalg.norm(tau_x) - 1e-12
        assert abs(abs(fa.sinisterness(tau)) - abs(np.prod(s))) < 1e-12


def test_frobenius_and_adjugate_measures():
    assert fa.frobenius_measure(BELL_TAU) == pytest.approx(4)
    assert fa.frobenius_measure(WERNER_TAU) == pytest.approx(4 / 3)
    assert fa.adjugate_measure(np.diag([1.0, 0, 1, 1])) == math.inf
    for tau in random_taus(7, 500):
        if abs(determinant(tau)) > 1e-6:
            sv = np.linalg.svd(tau, compute_uv=False)
            assert fa.frobenius_measure(tau) == pytest.approx(np.sum(sv**2), rel=1e-12)
            expected = np.linalg.norm(invert(tau), "fro")
            assert abs(fa.adjugate_measure(tau) - expected) <= 1e-8 * max(1.0, expected)


def test_min_frobenius_at_fixed_det():
    assert fa.min_frobenius_at_fixed_det(1.0) == 4.0
    assert fa.min_frobenius_at_fixed_det(1 / 27) == pytest.approx(4 / 3, rel=1e-14)
    grid = np.linspace(0.02, 1.0, 600)
    for det in (1 / 27, 0.001, 0.2, 0.6, 1.0):
        l2, l3 = np.meshgrid(grid, grid)
        l4 = det / (l2 * l3)
        ok = l4 <= 1.0
        total = 1 + l2**2 + l3**2 + l4**2
        best = total[ok].min()
        assert best >= fa.min_frobenius_at_fixed_det(det) - 1e-6
        assert best - fa.min_frobenius_at_fixed_det(det) < 1e-2


def test_analyze_report():
    report = fa.analyze(BELL_TAU)
    assert report.faithful and report.kappa == pytest.approx(1) and report.sinisterness == pytest.approx(-1)
    row = report.to_row()
    assert tuple(row) == fa.REPORT_FIELDS
    unfaithful = fa.analyze(np.diag([1.0, 0.3, 0.0, 0.2]))
    assert not unfaithful.faithful and unfaithful.kappa == math.inf and unfaithful.adjugate_measure == math.inf
    werner = fa.analyze(WERNER_TAU)
    assert werner.kappa >= werner.kappa_lower_bound >= 1 - 1e-12
    assert werner.optimal_x_kappa == pytest.approx(3)
