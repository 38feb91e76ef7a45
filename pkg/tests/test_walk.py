import numpy as np
import pytest

from weylwalk.walk import (
    Chirality,
    K_SPECIAL,
    LatticeState,
    SQRT3,
    delta_state,
    dispersion,
    eigenmodes,
    gaussian_packet,
    group_velocity,
    in_first_zone,
    lambda_scalar,
    n_vector,
    neighborhood_matrices,
    reduce_to_zone,
    step,
    step_position_space,
    walk_operator_k,
)

RNG = np.random.default_rng(20260809)
HALF = SQRT3 * np.pi / 2.0


def random_k(n=1, scale=2 * np.pi):
    return RNG.uniform(-scale, scale, size=(n, 3))


# ---------------------------------------------------------------------------
# pointwise values
# ---------------------------------------------------------------------------


def test_n_vector_at_origin():
    assert np.allclose(n_vector([0, 0, 0], Chirality.PLUS), 0.0)


def test_n_vector_axis_point():
    # s_x = 1, c_x = 0, transverse factors trivial
    assert np.allclose(n_vector([HALF, 0, 0], Chirality.PLUS), [1, 0, 0], atol=1e-15)


def test_n_vector_diagonal_point_vanishes():
    # every component carries at least one cosine factor, all c = 0 there
    assert np.allclose(n_vector([HALF] * 3, Chirality.PLUS), 0.0, atol=1e-15)


def test_lambda_values():
    assert lambda_scalar([0, 0, 0], Chirality.PLUS) == pytest.approx(1.0)
    assert lambda_scalar([HALF] * 3, Chirality.PLUS) == pytest.approx(-1.0)
    assert lambda_scalar([HALF] * 3, Chirality.MINUS) == pytest.approx(1.0)


def test_walk_operator_special_points():
    assert np.allclose(walk_operator_k([0, 0, 0]), np.eye(2))
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(walk_operator_k([HALF, 0, 0]), -1j * sx, atol=1e-15)
    assert np.allclose(walk_operator_k([HALF] * 3), -np.eye(2), atol=1e-15)


def test_unitarity_and_scalar_identity_sampled():
    ks = random_k(1000)
    for chir in Chirality:
        A = walk_operator_k(ks, chir)
        prod = A.conj().swapaxes(-1, -2) @ A
        assert np.max(np.abs(prod - np.eye(2))) < 1e-12
        lam = lambda_scalar(ks, chir)
        n = n_vector(ks, chir)
        assert np.max(np.abs(lam**2 + np.sum(n**2, axis=-1) - 1.0)) < 1e-14


def test_dispersion_values():
    assert dispersion([0, 0, 0]) == pytest.approx(0.0)
    assert dispersion([HALF, 0, 0]) == pytest.approx(np.pi / 2, abs=1e-12)
    eps = 1e-3
    assert dispersion([eps, 0, 0]) == pytest.approx(eps / SQRT3, abs=eps**3)


def test_dispersion_chirality_mirror():
    ks = random_k(200)
    assert np.allclose(
        dispersion(ks, Chirality.PLUS), dispersion(-ks, Chirality.MINUS), atol=1e-13
    )


def test_chirality_mirror_of_n():
    ks = random_k(50)
    assert np.allclose(
        n_vector(-ks, Chirality.PLUS), -n_vector(ks, Chirality.MINUS), atol=1e-13
    )


# ---------------------------------------------------------------------------
# Brillouin zone
# ---------------------------------------------------------------------------


def test_reduce_to_zone_lands_inside_and_is_idempotent():
    for k in random_k(100, scale=20.0):
        red = reduce_to_zone(k)
        assert in_first_zone(red)
        assert np.allclose(reduce_to_zone(red), red, atol=1e-9)


def test_walk_operator_periodic_under_reduction():
    for k in random_k(50, scale=20.0):
        red = reduce_to_zone(k)
        for chir in Chirality:
            assert np.allclose(
                walk_operator_k(k, chir), walk_operator_k(red, chir), atol=1e-10
            )


# ---------------------------------------------------------------------------
# eigenmodes
# ---------------------------------------------------------------------------


def test_eigenmodes_origin_canonical():
    modes = eigenmodes([0, 0, 0])
    assert modes[0][0] == pytest.approx(0.0)
    assert np.allclose(modes[0][1], [1, 0])
    assert np.allclose(modes[1][1], [0, 1])


def test_eigenmodes_axis_point():
    modes = eigenmodes([HALF, 0, 0], Chirality.PLUS)
    (w1, v1), (w2, v2) = modes
    assert w1 == pytest.approx(np.pi / 2, abs=1e-12)
    assert w2 == pytest.approx(-np.pi / 2, abs=1e-12)
    overlap1 = abs(np.vdot(v1, np.array([1, 1]) / np.sqrt(2)))
    overlap2 = abs(np.vdot(v2, np.array([1, -1]) / np.sqrt(2)))
    assert overlap1 == pytest.approx(1.0, abs=1e-12)
    assert overlap2 == pytest.approx(1.0, abs=1e-12)


def _kernel_residual(k, chir, omega, spinor):
    n = n_vector(k, chir)
    if chir is Chirality.MINUS:
        n = n * np.array([1, -1, 1])
    nsig = np.array([[n[2], n[0] - 1j * n[1]], [n[0] + 1j * n[1], -n[2]]])
    return np.linalg.norm((np.sin(omega) * np.eye(2) - nsig) @ spinor)


def test_eigenmodes_random_kernel_and_eigenvalue():
    for k in random_k(100):
        for chir in Chirality:
            A = walk_operator_k(k, chir)
            for omega, spinor in eigenmodes(k, chir):
                assert _kernel_residual(k, chir, omega, spinor) < 1e-12
                assert np.linalg.norm(A @ spinor - np.exp(-1j * omega) * spinor) < 1e-12
                assert np.linalg.norm(spinor) == pytest.approx(1.0, abs=1e-13)


def test_chirality_exchange_near_k1():
    # at k1 + q the plus walk carries the minus walk's modes: the positive
    # branch at frequency pi - omega has exactly the minus walk's negative
    # branch spinor at q
    for _ in range(20):
        q = RNG.uniform(-0.4, 0.4, size=3)
        w_plus, v_plus = eigenmodes(K_SPECIAL[1] + q, Chirality.PLUS)[0]
        w_minus, v_minus = eigenmodes(q, Chirality.MINUS)[1]
        assert w_plus == pytest.approx(np.pi + w_minus, abs=1e-12)
        assert abs(np.vdot(v_plus, v_minus)) == pytest.approx(1.0, abs=1e-10)


def test_chirality_exchange_near_k3():
    # at k3 + q the positive branch matches the conjugated minus-walk
    # positive branch at -q
    for _ in range(20):
        q = RNG.uniform(-0.4, 0.4, size=3)
        w_plus, v_plus = eigenmodes(K_SPECIAL[3] + q, Chirality.PLUS)[0]
        w_minus, v_minus = eigenmodes(-q, Chirality.MINUS)[0]
        assert w_plus == pytest.approx(np.pi - w_minus, abs=1e-12)
        assert abs(np.vdot(v_plus, np.conj(v_minus))) == pytest.approx(1.0, abs=1e-10)


# ---------------------------------------------------------------------------
# neighborhood scheme
# ---------------------------------------------------------------------------


def test_neighborhood_sum_is_identity():
    for chir in Chirality:
        scheme = neighborhood_matrices(chir)
        assert np.allclose(scheme.matrices.sum(axis=0), np.eye(2), atol=1e-15)


def test_neighborhood_entries_are_eighth_integers():
    for chir in Chirality:
        scheme = neighborhood_matrices(chir)
        scaled = scheme.matrices * 8.0
        assert np.allclose(scaled, np.round(scaled.real) + 1j * np.round(scaled.imag))
        assert np.max(np.abs(scaled.real)) <= 2 and np.max(np.abs(scaled.imag)) <= 2


def test_neighborhood_reconstruction():
    for chir in Chirality:
        scheme = neighborhood_matrices(chir)
        for k in random_k(100):
            assert np.max(np.abs(scheme.reconstruct(k) - walk_operator_k(k, chir))) < 1e-12


# ---------------------------------------------------------------------------
# evolution
# ---------------------------------------------------------------------------


def random_state(N):
    amp = RNG.normal(size=(N, N, N, 2)) + 1j * RNG.normal(size=(N, N, N, 2))
    amp /= np.sqrt(np.sum(np.abs(amp) ** 2))
    return LatticeState(N, amp)


def test_step_zero_is_identity():
    state = random_state(4)
    assert step(state, Chirality.PLUS, 0) is state


def test_step_rejects_bad_input():
    with pytest.raises(ValueError):
        LatticeState(5, np.zeros((5, 5, 5, 2), dtype=complex))
    amp = np.zeros((4, 4, 4, 2), dtype=complex)
    amp[0, 0, 0, 0] = 2.0  # norm 2
    with pytest.raises(ValueError):
        LatticeState(4, amp)
    with pytest.raises(ValueError):
        step(random_state(4), Chirality.PLUS, -1)


def test_delta_step_support_and_weights():
    N = 8
    spinor = np.array([0.6, 0.8j])
    state = delta_state(N, spinor)
    for chir in Chirality:
        out = step(state, chir, 1)
        scheme = neighborhood_matrices(chir)
        expected = np.zeros((N, N, N, 2), dtype=complex)
        for y, mat in zip(scheme.grid_steps, scheme.matrices):
            site = tuple((-y) % N)
            expected[site] += mat @ spinor
        assert np.max(np.abs(out.amplitudes - expected)) < 1e-12


def test_fft_step_matches_position_space_oracle():
    for N in (4, 8, 16):
        for _ in range(3):
            state = random_state(N)
            for chir in Chirality:
                fft_out = step(state, chir, 1)
                pos_out = step_position_space(state, chir)
                assert np.max(np.abs(fft_out.amplitudes - pos_out.amplitudes)) < 1e-10
                assert pos_out.norm() == pytest.approx(1.0, abs=1e-12)


def test_multi_step_is_power():
    state = random_state(8)
    chained = step(step(step(state, n_steps=1), n_steps=1), n_steps=1)
    direct = step(state, n_steps=3)
    assert np.max(np.abs(chained.amplitudes - direct.amplitudes)) < 1e-10


def test_group_velocity_matches_finite_differences():
    h = 1e-6
    for k in RNG.uniform(-1.0, 1.0, size=(20, 3)):
        if np.linalg.norm(n_vector(k)) < 1e-3:
            continue
        for chir in Chirality:
            v = group_velocity(k, chir)
            fd = np.empty(3)
            for j in range(3):
                d = np.zeros(3)
                d[j] = h
                fd[j] = (dispersion(k + d, chir) - dispersion(k - d, chir)) / (2 * h)
            assert np.max(np.abs(v - fd)) < 1e-8


def test_group_velocity_bound():
    # one axis hop per step: |d omega / d k_a| <= 1/sqrt(3) componentwise
    # (the euclidean norm legitimately exceeds 1/sqrt(3), up to 1 on the
    # zone diagonal, so the causal bound is the max-norm one)
    grid = np.linspace(-np.pi, np.pi, 11)
    worst_comp = 0.0
    worst_norm = 0.0
    for kx in grid:
        for ky in grid:
            for kz in grid:
                k = np.array([kx, ky, kz])
                if np.linalg.norm(n_vector(k)) < 1e-6:
                    continue
                v = group_velocity(k)
                worst_comp = max(worst_comp, float(np.max(np.abs(v))))
                worst_norm = max(worst_norm, float(np.linalg.norm(v)))
    assert worst_comp <= 1.0 / SQRT3 + 1e-9
    assert worst_norm <= 1.0 + 1e-9


def test_packet_drift_matches_group_velocity():
    N = 64
    k_c = SQRT3 * np.array([0.7, 0.3, 0.2])
    state = gaussian_packet(N, k_c, width=8.0)
    steps = 10
    evolved = step(state, Chirality.PLUS, steps)
    drift = (evolved.centroid() - state.centroid()) / steps
    drift = (drift + N / 2) % N - N / 2
    predicted = SQRT3 * group_velocity(k_c)  # grid units
    assert np.linalg.norm(drift - predicted) < 0.02 * np.linalg.norm(predicted)
    assert evolved.norm() == pytest.approx(1.0, abs=1e-10)
