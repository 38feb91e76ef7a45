import numpy as np
import pytest

from weylwalk.lorentz import (
    DEFAULT_SAFE_RADIUS,
    DeformationConfig,
    ETA,
    GChoice,
    Handedness,
    NoConvergence,
    OffShellInput,
    OnShellPoint,
    boost_matrix,
    check_symmetry,
    deformation_D,
    deformation_D_inverse,
    deformed_boost,
    deformed_transform,
    jacobian_D_at_zero,
    load_deformation_config,
    lorentz_transform,
    minkowski,
    n_jacobian,
    reduce_to_region0,
    rotation_matrix,
    sample_onshell_points,
    spinor_rep,
    symmetry_residuals,
    unreduce_from_region0,
    vector_from_spinor,
)
from weylwalk.walk import Chirality, SQRT3, dispersion, lambda_scalar, n_vector

RNG = np.random.default_rng(42)
CFG = DeformationConfig()


def eta_defect(L):
    return float(np.max(np.abs(L.T @ ETA @ L - ETA)))


# ---------------------------------------------------------------------------
# linear sector
# ---------------------------------------------------------------------------


def test_boost_identity_and_inverse():
    assert np.allclose(boost_matrix([0, 0, 0]), np.eye(4))
    beta = np.array([0.3, -0.4, 0.2])
    assert np.allclose(boost_matrix(beta) @ boost_matrix(-beta), np.eye(4), atol=1e-12)


def test_boost_null_scaling():
    eta_rap = 0.8
    L = boost_matrix([0, 0, eta_rap])
    p = np.array([1.0, 0.0, 0.0, 1.0])
    assert np.allclose(L @ p, np.exp(eta_rap) * p, atol=1e-12)


def test_lorentz_invariants_random():
    for _ in range(50):
        L = lorentz_transform(RNG.uniform(-1, 1, 3), RNG.uniform(-1, 1, 3))
        assert eta_defect(L) < 1e-12
        assert np.linalg.det(L) == pytest.approx(1.0, abs=1e-12)
        assert L[0, 0] >= 1.0 - 1e-12


def test_wigner_closure():
    # two boosts compose to boost times rotation; the product stays in the group
    L = boost_matrix([0.4, 0, 0]) @ boost_matrix([0, 0.5, 0])
    assert eta_defect(L) < 1e-12
    assert np.linalg.det(L) == pytest.approx(1.0, abs=1e-12)


def test_spinor_identity_and_double_cover():
    assert np.allclose(spinor_rep([0, 0, 0]), np.eye(2))
    full_turn = spinor_rep([0, 0, 0], [0, 0, 2 * np.pi])
    assert np.allclose(full_turn, -np.eye(2), atol=1e-12)


def test_spinor_unit_determinant():
    for _ in range(20):
        for h in Handedness:
            lam = spinor_rep(RNG.uniform(-1, 1, 3), RNG.uniform(-1, 1, 3), h)
            assert np.linalg.det(lam) == pytest.approx(1.0, abs=1e-12)


def test_spinor_vector_homomorphism():
    for _ in range(30):
        beta = RNG.uniform(-0.8, 0.8, 3)
        theta = RNG.uniform(-1.5, 1.5, 3)
        L = vector_from_spinor(spinor_rep(beta, theta, Handedness.RIGHT))
        assert eta_defect(L) < 1e-10
        # pure boosts must also agree with the closed-form matrix
    beta = np.array([0.3, 0.1, -0.5])
    assert np.allclose(lorentz_transform(beta), boost_matrix(beta), atol=1e-12)
    theta = np.array([0.2, -0.7, 0.4])
    assert np.allclose(lorentz_transform([0, 0, 0], theta), rotation_matrix(theta), atol=1e-12)


def test_left_is_inverse_dagger_of_right():
    beta, theta = RNG.uniform(-1, 1, 3), RNG.uniform(-1, 1, 3)
    right = spinor_rep(beta, theta, Handedness.RIGHT)
    left = spinor_rep(beta, theta, Handedness.LEFT)
    assert np.allclose(left, np.linalg.inv(right.conj().T), atol=1e-12)


# ---------------------------------------------------------------------------
# deformation map
# ---------------------------------------------------------------------------


def test_deformation_at_origin():
    pt = OnShellPoint.from_k([0.0, 0.0, 0.0], 0)
    assert np.allclose(deformation_D(pt, CFG), np.zeros(4))


def test_deformation_small_k_secant():
    eps = 1e-3
    k = np.array([eps, 0, 0])
    pt = OnShellPoint.from_k(k, 0)
    p = deformation_D(pt, CFG)
    omega = pt.omega
    expected = np.array([np.tan(omega), np.sin(eps / SQRT3) / np.cos(omega), 0.0, 0.0])
    assert np.allclose(p, expected, atol=1e-15)


def test_deformation_lands_on_null_cone():
    for pt in sample_onshell_points(100, RNG):
        p = deformation_D(pt, CFG)
        assert abs(minkowski(p)) < 1e-10 * (1 + p[0] ** 2)


def test_roundtrip_all_regions():
    for region in range(4):
        for pt in sample_onshell_points(25, RNG, region=region):
            p = deformation_D(pt, CFG)
            back = deformation_D_inverse(p, region, CFG)
            assert np.max(np.abs(back.k - pt.k)) < 1e-9
            assert abs(back.omega - pt.omega) < 1e-9


def test_inverse_rejects_offshell():
    with pytest.raises(OffShellInput):
        deformation_D_inverse(np.array([1.0, 0.3, 0.0, 0.0]), 0, CFG)  # p.p = 0.91


def test_inverse_origin():
    pt = deformation_D_inverse(np.zeros(4), 0, CFG)
    assert pt.omega == pytest.approx(0.0)
    assert np.allclose(pt.k, 0.0)


def test_unit_g_roundtrip_and_nonsurjectivity():
    cfg = DeformationConfig(g_choice=GChoice.UNIT)
    for pt in sample_onshell_points(20, RNG):
        p = deformation_D(pt, cfg)
        back = deformation_D_inverse(p, 0, cfg)
        assert np.max(np.abs(back.k - pt.k)) < 1e-9
    null_beyond = np.array([1.5, 1.5, 0.0, 0.0])  # null but p0 > 1
    with pytest.raises(NoConvergence):
        deformation_D_inverse(null_beyond, 0, cfg)


def test_custom_g_matches_secant():
    # a tabulated-style g equal to the secant choice must reproduce it
    cfg = DeformationConfig(
        g_choice=GChoice.CUSTOM,
        custom_g=lambda omega, k: 1.0 / np.sqrt(max(1.0 - np.sin(omega) ** 2, 1e-300)),
        newton_tol=1e-11,
    )
    for pt in sample_onshell_points(5, RNG):
        p_sec = deformation_D(pt, CFG)
        p_cus = deformation_D(pt, cfg)
        assert np.allclose(p_sec, p_cus, atol=1e-12)
        back = deformation_D_inverse(p_cus, 0, cfg)
        assert np.max(np.abs(back.k - pt.k)) < 1e-7


def test_jacobian_selfcheck_rejects_singular_ball():
    from weylwalk.lorentz import _verified_jacobian_radius

    with pytest.raises(RuntimeError):
        _verified_jacobian_radius(round(SQRT3 * np.pi / 4.0, 12))  # corners are singular
    assert _verified_jacobian_radius(round(DEFAULT_SAFE_RADIUS, 12)) > 1e-4


def test_jacobian_D_conventions():
    assert np.allclose(jacobian_D_at_zero(rescaled=True), np.eye(4), atol=1e-9)
    raw = jacobian_D_at_zero(rescaled=False)
    assert np.allclose(raw, np.diag([1.0, 1 / SQRT3, 1 / SQRT3, 1 / SQRT3]), atol=1e-9)


def test_n_jacobian_at_zero():
    assert np.allclose(n_jacobian([0, 0, 0]), np.eye(3) / SQRT3, atol=1e-15)


# ---------------------------------------------------------------------------
# deformed boosts
# ---------------------------------------------------------------------------


def test_zero_boost_is_identity():
    for pt in sample_onshell_points(10, RNG):
        out = deformed_boost(pt, [0, 0, 0], cfg=CFG)
        assert np.max(np.abs(out.k - pt.k)) < 1e-10
        assert abs(out.omega - pt.omega) < 1e-12


def test_onshell_preserved():
    for pt in sample_onshell_points(40, RNG):
        beta = RNG.uniform(-0.28, 0.28, 3)
        out = deformed_boost(pt, beta, cfg=CFG)
        n = n_vector(out.k)
        assert abs(np.sin(out.omega) ** 2 - np.dot(n, n)) < 1e-9


def test_small_k_small_beta_linear_limit():
    # against the linear boost of (omega, k / sqrt(3)): agreement through
    # second order, cubic-order error
    for scale in (2e-2, 1e-2):
        k = scale * SQRT3 * np.array([0.6, -0.3, 0.45])
        beta = scale * np.array([0.8, 0.35, -0.5])
        pt = OnShellPoint.from_k(k, 0)
        out = deformed_boost(pt, beta, cfg=CFG)
        lin = boost_matrix(beta) @ np.concatenate(([pt.omega], k / SQRT3))
        err = np.max(np.abs(np.concatenate(([out.omega], out.k / SQRT3)) - lin))
        assert err < 20.0 * scale**3


def test_composition_group_action():
    count = 0
    while count < 100:
        pt = sample_onshell_points(1, RNG, radius_frac=0.25)[0]
        b1 = RNG.uniform(-0.2, 0.2, 3)
        b2 = RNG.uniform(-0.2, 0.2, 3)
        t1 = RNG.uniform(-0.3, 0.3, 3)
        t2 = RNG.uniform(-0.3, 0.3, 3)
        L1 = lorentz_transform(b1, t1)
        L2 = lorentz_transform(b2, t2)
        seq = deformed_transform(deformed_transform(pt, L1, CFG), L2, CFG)
        combined = deformed_transform(pt, L2 @ L1, CFG)
        assert np.max(np.abs(seq.k - combined.k)) < 1e-8
        assert abs(seq.omega - combined.omega) < 1e-8
        count += 1


def test_collinear_rapidity_addition():
    pt = sample_onshell_points(1, RNG, radius_frac=0.2)[0]
    direction = np.array([0.3, -0.8, 0.52])
    direction /= np.linalg.norm(direction)
    a = deformed_boost(deformed_boost(pt, 0.2 * direction, cfg=CFG), 0.15 * direction, cfg=CFG)
    b = deformed_boost(pt, 0.35 * direction, cfg=CFG)
    assert np.max(np.abs(a.k - b.k)) < 1e-9


def test_energy_scale_divergence():
    # omega -> pi/2 pushes the deformed energy to infinity: the invariant scale
    lam_target = np.sin(1e-6)  # omega = pi/2 - 1e-6
    lo, hi = 0.0, DEFAULT_SAFE_RADIUS / SQRT3 * SQRT3
    # bisect along the diagonal where lambda falls monotonically toward 0
    lo, hi = 0.0, DEFAULT_SAFE_RADIUS
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if lambda_scalar(np.array([mid] * 3)) > lam_target:
            lo = mid
        else:
            hi = mid
    k = np.array([lo] * 3)
    pt = OnShellPoint.from_k(k, 0)
    assert pt.omega > np.pi / 2 - 2e-6
    p = deformation_D(pt, CFG)
    assert p[0] > 1e5


# ---------------------------------------------------------------------------
# the symmetry of the dynamics
# ---------------------------------------------------------------------------


def test_zero_transform_zero_residual():
    pt = sample_onshell_points(1, RNG)[0]
    assert check_symmetry(pt, [0, 0, 0], cfg=CFG) < 1e-14


def test_covariance_region0():
    for pt in sample_onshell_points(50, RNG):
        beta = RNG.uniform(-0.28, 0.28, 3)
        theta = RNG.uniform(-0.3, 0.3, 3)
        assert check_symmetry(pt, beta, theta, CFG) < 1e-9


def test_covariance_all_regions():
    for region in range(4):
        for pt in sample_onshell_points(15, RNG, region=region):
            beta = RNG.uniform(-0.25, 0.25, 3)
            assert check_symmetry(pt, beta, cfg=CFG) < 1e-9


def test_handedness_swap_negative_control():
    hits = 0
    total = 60
    for _ in range(total):
        pt = sample_onshell_points(1, RNG, min_frac=0.15)[0]
        direction = RNG.normal(size=3)
        direction /= np.linalg.norm(direction)
        beta = RNG.uniform(0.05, 0.5) * direction
        if check_symmetry(pt, beta, cfg=CFG, swap_handedness=True) > 1e-2:
            hits += 1
    assert hits >= 0.95 * total


def test_raw_residual_also_small():
    pt = sample_onshell_points(1, RNG)[0]
    normalized, raw = symmetry_residuals(pt, [0.2, -0.1, 0.3], cfg=CFG)
    assert normalized < 1e-9 and raw < 1e-9


def test_region_reduction_identities():
    for region in range(4):
        for _ in range(20):
            q = RNG.uniform(-0.9, 0.9, 3)
            k = unreduce_from_region0(q, region)
            assert np.allclose(reduce_to_region0(k, region), q, atol=1e-12)
            sign = -1.0 if region in (1, 3) else 1.0
            assert np.allclose(n_vector(k), sign * n_vector(q), atol=1e-12)
            om_q = dispersion(q)
            om_k = dispersion(k)
            expected = np.pi - om_q if region in (1, 3) else om_q
            assert om_k == pytest.approx(float(expected), abs=1e-12)


def test_minus_chirality_not_supported_in_deformation():
    pt = OnShellPoint.from_k([0.1, 0.2, 0.3], 0, Chirality.MINUS)
    with pytest.raises(NotImplementedError):
        deformation_D(pt, CFG)


# ---------------------------------------------------------------------------
# config file
# ---------------------------------------------------------------------------


def test_load_deformation_config(tmp_path):
    path = tmp_path / "deform.cfg"
    path.write_text(
        "# deformation settings\n"
        "g_choice = unit\n"
        "newton_tol = 1e-11\n"
        "newton_max_iter = 32\n"
        "safe_radius = 1.2\n"
    )
    cfg = load_deformation_config(path)
    assert cfg.g_choice is GChoice.UNIT
    assert cfg.newton_tol == 1e-11
    assert cfg.newton_max_iter == 32
    assert cfg.safe_radius == 1.2


def test_load_deformation_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "deform.cfg"
    path.write_text("speed = 3\n")
    with pytest.raises(ValueError):
        load_deformation_config(path)
