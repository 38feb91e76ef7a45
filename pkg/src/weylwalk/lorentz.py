"""Linear Lorentz transformations, their spinor representations, and the
nonlinear momentum-space symmetry of the walk.

The deformation sends an on-shell pair to a null four-vector,

    D(omega, k) = g(omega, k) * (sin(omega), n(k)),

which is null exactly because sin^2(omega) = |n|^2 on shell.  Conjugating a
linear transformation L through D gives the nonlinear action
D^-1 . L . D on the shell; the inverse needs a small damped Newton solve for
k given n(k).  The default g = (1 - sin^2 omega)^(-1/2) maps the half-shell
omega in [0, pi/2) onto all of p0 >= 0, so boosts never leave the image and
omega = pi/2 becomes an invariant energy scale.

Conventions: a pure boost of rapidity b along z sends the null vector
(1, 0, 0, 1) to e^b (1, 0, 0, 1); its right-handed spinor representative is
exp(+b sigma_z / 2) and the left-handed one exp(-b sigma_z / 2); rotations are
exp(-i theta . sigma / 2) in both.  The module covers the plus-chirality walk
(the minus walk is its mirror through k -> -k).
"""

from __future__ import annotations

import cmath
import enum
import functools
from dataclasses import dataclass, replace
from itertools import product
from typing import Callable, Optional, Tuple

import numpy as np

from .walk import Chirality, K_SPECIAL, PAULI, SQRT3, dispersion, n_vector

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


class NoConvergence(RuntimeError):
    """Newton failed: the target lies outside the verified sub-region."""


class OffShellInput(ValueError):
    """Input four-vector is not null (or the pair is not on shell)."""


def minkowski(p, q=None) -> float:
    p = np.asarray(p, dtype=float)
    q = p if q is None else np.asarray(q, dtype=float)
    return float(p[0] * q[0] - np.dot(p[1:], q[1:]))


# ---------------------------------------------------------------------------
# linear transformations
# ---------------------------------------------------------------------------


def boost_matrix(beta) -> np.ndarray:
    """Pure boost with rapidity |beta| along beta-hat."""
    beta = np.asarray(beta, dtype=float)
    eta = float(np.linalg.norm(beta))
    L = np.eye(4)
    if eta == 0.0:
        return L
    nhat = beta / eta
    ch, sh = np.cosh(eta), np.sinh(eta)
    L[0, 0] = ch
    L[0, 1:] = sh * nhat
    L[1:, 0] = sh * nhat
    L[1:, 1:] = np.eye(3) + (ch - 1.0) * np.outer(nhat, nhat)
    return L


def rotation_matrix(theta) -> np.ndarray:
    """Spatial rotation by |theta| about theta-hat (Rodrigues)."""
    theta = np.asarray(theta, dtype=float)
    angle = float(np.linalg.norm(theta))
    L = np.eye(4)
    if angle == 0.0:
        return L
    nhat = theta / angle
    K = np.array(
        [
            [0.0, -nhat[2], nhat[1]],
            [nhat[2], 0.0, -nhat[0]],
            [-nhat[1], nhat[0], 0.0],
        ]
    )
    L[1:, 1:] = np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)
    return L


class Handedness(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


def _exp_sigma(a: np.ndarray) -> np.ndarray:
    """exp(a . sigma) for a complex 3-vector, via cosh/sinhc of sqrt(a.a)."""
    mu2 = complex(a[0] ** 2 + a[1] ** 2 + a[2] ** 2)
    mu = cmath.sqrt(mu2)
    if abs(mu) < 1e-8:
        cosh = 1.0 + mu2 / 2.0 + mu2**2 / 24.0
        sinhc = 1.0 + mu2 / 6.0 + mu2**2 / 120.0
    else:
        cosh = cmath.cosh(mu)
        sinhc = cmath.sinh(mu) / mu
    asig = a[0] * PAULI[0] + a[1] * PAULI[1] + a[2] * PAULI[2]
    return cosh * np.eye(2, dtype=complex) + sinhc * asig


def spinor_rep(beta, theta=(0.0, 0.0, 0.0), handedness: Handedness = Handedness.RIGHT) -> np.ndarray:
    """Two-component representative exp((+-beta - i theta) . sigma / 2)."""
    beta = np.asarray(beta, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sign = 1.0 if handedness is Handedness.RIGHT else -1.0
    a = (sign * beta - 1j * theta) / 2.0
    return _exp_sigma(a)


def vector_from_spinor(lam: np.ndarray) -> np.ndarray:
    """The four-vector action induced by a right-handed representative via
    X(p) = p0 I + p . sigma  ->  lam X lam^dagger."""
    L = np.empty((4, 4))
    basis = [np.eye(2, dtype=complex)] + [PAULI[i] for i in range(3)]
    for nu, X in enumerate(basis):
        Xp = lam @ X @ lam.conj().T
        L[0, nu] = 0.5 * np.trace(Xp).real
        for mu in range(3):
            L[mu + 1, nu] = 0.5 * np.trace(PAULI[mu] @ Xp).real
    return L


def lorentz_transform(beta, theta=(0.0, 0.0, 0.0)) -> np.ndarray:
    """4x4 matrix of the group element exp((beta - i theta) . sigma / 2),
    built through the spinor representation so the homomorphism is exact."""
    return vector_from_spinor(spinor_rep(beta, theta, Handedness.RIGHT))


# ---------------------------------------------------------------------------
# the deformation map and its configuration
# ---------------------------------------------------------------------------


class GChoice(enum.Enum):
    UNIT = "unit"
    SECANT = "secant"
    CUSTOM = "custom"


# 95% of the quarter-zone component ball: at the full radius the corners
# (where omega reaches pi/2) make the Jacobian of n exactly singular
DEFAULT_SAFE_RADIUS = 0.95 * SQRT3 * np.pi / 4.0


@dataclass(frozen=True)
class DeformationConfig:
    g_choice: GChoice = GChoice.SECANT
    newton_tol: float = 1e-12
    newton_max_iter: int = 64
    safe_radius: float = DEFAULT_SAFE_RADIUS
    custom_g: Optional[Callable[[float, np.ndarray], float]] = None

    def g(self, omega: float, k) -> float:
        if self.g_choice is GChoice.UNIT:
            return 1.0
        if self.g_choice is GChoice.SECANT:
            s = np.sin(omega)
            return 1.0 / np.sqrt(max(1.0 - s * s, 1e-300))
        if self.custom_g is None:
            raise ValueError("custom g_choice requires a custom_g callable")
        return float(self.custom_g(omega, np.asarray(k, dtype=float)))


def load_deformation_config(path) -> DeformationConfig:
    """Read key = value lines (g_choice, newton_tol, newton_max_iter,
    safe_radius); unknown keys are rejected."""
    cfg = DeformationConfig()
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            value = value.strip("\"'")
            if key == "g_choice":
                cfg = replace(cfg, g_choice=GChoice(value))
            elif key == "newton_tol":
                cfg = replace(cfg, newton_tol=float(value))
            elif key == "newton_max_iter":
                cfg = replace(cfg, newton_max_iter=int(value))
            elif key == "safe_radius":
                cfg = replace(cfg, safe_radius=float(value))
            else:
                raise ValueError(f"unknown config key: {key}")
    return cfg


# ---------------------------------------------------------------------------
# on-shell points and region reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OnShellPoint:
    omega: float
    k: np.ndarray
    region: int = 0
    chirality: Chirality = Chirality.PLUS

    @staticmethod
    def from_k(k, region: int = 0, chirality: Chirality = Chirality.PLUS) -> "OnShellPoint":
        k = np.asarray(k, dtype=float)
        return OnShellPoint(float(dispersion(k, chirality)), k, region, chirality)

    def shell_defect(self) -> float:
        n = n_vector(self.k, self.chirality)
        return float(abs(np.sin(self.omega) ** 2 - np.dot(n, n)))


# Each region reduces to region-0 data via the lattice point symmetry
# n(R k) = R n(k) for R = diag(-1, 1, -1):
#   n(k) = sign * n(q),  omega = omega_tilde or pi - omega_tilde.
# sign = -1 (an improper transfer) is what exchanges the spinor handedness.
_REGION_FLIP = {0: False, 1: True, 2: False, 3: True}
_REGION_SIGN = {0: 1.0, 1: -1.0, 2: 1.0, 3: -1.0}
_RY = np.diag([-1.0, 1.0, -1.0])


def reduce_to_region0(k, region: int) -> np.ndarray:
    """The region-0 momentum q with n(k) = sign_i n(q) (plus chirality)."""
    k = np.asarray(k, dtype=float)
    if region == 0:
        return k.copy()
    if region == 1:
        return _RY @ (K_SPECIAL[1] - k)
    if region == 2:
        return _RY @ (K_SPECIAL[2] - k)
    if region == 3:
        return k - K_SPECIAL[3]
    raise ValueError("region must be one of 0..3")


def unreduce_from_region0(q, region: int) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if region == 0:
        return q.copy()
    if region == 1:
        return K_SPECIAL[1] - _RY @ q
    if region == 2:
        return K_SPECIAL[2] - _RY @ q
    if region == 3:
        return K_SPECIAL[3] + q
    raise ValueError("region must be one of 0..3")


def _require_plus(pt_or_chirality) -> None:
    chir = getattr(pt_or_chirality, "chirality", pt_or_chirality)
    if chir is not Chirality.PLUS:
        raise NotImplementedError(
            "the deformation machinery covers the plus-chirality walk; "
            "the minus walk is its k -> -k mirror"
        )


# ---------------------------------------------------------------------------
# Jacobian of n and the verified sub-region
# ---------------------------------------------------------------------------


def n_jacobian(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    """Analytic 3x3 Jacobian of k -> n(k)."""
    u = np.asarray(k, dtype=float) / SQRT3
    c, s = np.cos(u), np.sin(u)
    cx, cy, cz = c
    sx, sy, sz = s
    g = chirality.value
    J = np.array(
        [
            [cx * cy * cz - g * sx * sy * sz, -sx * sy * cz + g * cx * cy * sz, -sx * cy * sz + g * cx * sy * cz],
            [-sx * sy * cz - g * cx * cy * sz, cx * cy * cz + g * sx * sy * sz, -cx * sy * sz - g * sx * cy * cz],
            [-sx * cy * sz + g * cx * sy * cz, -cx * sy * sz + g * sx * cy * cz, cx * cy * cz - g * sx * sy * sz],
        ]
    )
    return J / SQRT3


@functools.lru_cache(maxsize=8)
def _verified_jacobian_radius(radius_key: float) -> float:
    """Startup self-check: min |det J(n)| over a grid of the component ball
    |k_a| <= radius must stay away from zero."""
    radius = float(radius_key)
    grid = np.linspace(-radius, radius, 9)
    worst = np.inf
    for kx, ky, kz in product(grid, repeat=3):
        det = abs(np.linalg.det(n_jacobian(np.array([kx, ky, kz]))))
        worst = min(worst, det)
    if worst < 1e-4:
        raise RuntimeError(
            f"Jacobian self-check failed: min |det J| = {worst:.2e} on radius {radius}"
        )
    return worst


def _invert_n(target: np.ndarray, cfg: DeformationConfig) -> np.ndarray:
    """Damped Newton solve of n(q) = target inside the verified ball."""
    _verified_jacobian_radius(round(cfg.safe_radius, 12))
    q = SQRT3 * np.arcsin(np.clip(target, -1.0, 1.0))
    best = float(np.linalg.norm(n_vector(q) - target))
    for _ in range(cfg.newton_max_iter):
        r = n_vector(q) - target
        rnorm = float(np.linalg.norm(r))
        if rnorm <= cfg.newton_tol:
            if np.max(np.abs(q)) > cfg.safe_radius + 1e-9:
                raise NoConvergence("solution escaped the verified sub-region")
            return q
        dq = np.linalg.solve(n_jacobian(q), -r)
        scale = 1.0
        for _ in range(30):
            cand = q + scale * dq
            cnorm = float(np.linalg.norm(n_vector(cand) - target))
            if cnorm < rnorm:
                q = cand
                best = cnorm
                break
            scale *= 0.5
        else:
            raise NoConvergence(f"Newton stalled at residual {best:.3e}")
    raise NoConvergence(f"no convergence within {cfg.newton_max_iter} iterations")


# ---------------------------------------------------------------------------
# D, its inverse, and the deformed action
# ---------------------------------------------------------------------------


def deformation_D(pt: OnShellPoint, cfg: DeformationConfig = DeformationConfig()) -> np.ndarray:
    """g(omega, k) * (sin omega, n(k)); lands on the null cone."""
    _require_plus(pt)
    if pt.shell_defect() > 1e-8:
        raise OffShellInput(f"point off shell by {pt.shell_defect():.3e}")
    q = reduce_to_region0(pt.k, pt.region)
    omega_t = np.pi - pt.omega if _REGION_FLIP[pt.region] else pt.omega
    g = cfg.g(omega_t, q)
    return g * np.concatenate(([np.sin(omega_t)], n_vector(q)))


def deformation_D_inverse(
    p, region: int = 0, cfg: DeformationConfig = DeformationConfig()
) -> OnShellPoint:
    """Solve D(omega, k) = p on the region's shell patch."""
    p = np.asarray(p, dtype=float)
    if abs(minkowski(p)) > 1e-10 * (1.0 + p[0] ** 2):
        raise OffShellInput(f"p.p = {minkowski(p):.3e} is not null")
    if p[0] < 0:
        raise OffShellInput("p0 < 0: only the forward branch is parametrized")
    if cfg.g_choice is GChoice.SECANT:
        omega_t = float(np.arctan(p[0]))
        target = p[1:] / np.sqrt(1.0 + p[0] ** 2)
    elif cfg.g_choice is GChoice.UNIT:
        if p[0] > 1.0 + 1e-12:
            raise NoConvergence("p0 > 1 is outside the image of the unit-g map")
        omega_t = float(np.arcsin(np.clip(p[0], -1.0, 1.0)))
        target = p[1:]
    else:
        return _invert_custom(p, region, cfg)
    q = _invert_n(target, cfg)
    omega = np.pi - omega_t if _REGION_FLIP[region] else omega_t
    return OnShellPoint(float(omega), unreduce_from_region0(q, region), region, Chirality.PLUS)


def _invert_custom(p: np.ndarray, region: int, cfg: DeformationConfig) -> OnShellPoint:
    """Joint damped Newton on (omega, q) for a user-supplied g."""
    x = np.zeros(4)
    x[0] = np.arctan(p[0])  # secant guess
    x[1:] = SQRT3 * np.arcsin(np.clip(p[1:] / np.sqrt(1.0 + p[0] ** 2), -1.0, 1.0))

    def f(x):
        g = cfg.g(x[0], x[1:])
        return g * np.concatenate(([np.sin(x[0])], n_vector(x[1:]))) - p

    r = f(x)
    for _ in range(cfg.newton_max_iter):
        rnorm = float(np.linalg.norm(r))
        if rnorm <= cfg.newton_tol * (1.0 + abs(p[0])):
            omega = np.pi - x[0] if _REGION_FLIP[region] else x[0]
            return OnShellPoint(float(omega), unreduce_from_region0(x[1:], region), region, Chirality.PLUS)
        J = np.empty((4, 4))
        h = 1e-7
        for j in range(4):
            dx = np.zeros(4)
            dx[j] = h
            J[:, j] = (f(x + dx) - f(x - dx)) / (2 * h)
        step_vec = np.linalg.solve(J, -r)
        scale = 1.0
        for _ in range(30):
            cand = x + scale * step_vec
            rc = f(cand)
            if np.linalg.norm(rc) < rnorm:
                x, r = cand, rc
                break
            scale *= 0.5
        else:
            raise NoConvergence("custom-g Newton stalled")
    raise NoConvergence("custom-g Newton did not converge")


def deformed_transform(
    pt: OnShellPoint, L: np.ndarray, cfg: DeformationConfig = DeformationConfig()
) -> OnShellPoint:
    """D^-1(L D(pt)) on the point's region."""
    return deformation_D_inverse(np.asarray(L) @ deformation_D(pt, cfg), pt.region, cfg)


def deformed_boost(
    pt: OnShellPoint,
    beta,
    theta=(0.0, 0.0, 0.0),
    cfg: DeformationConfig = DeformationConfig(),
) -> OnShellPoint:
    return deformed_transform(pt, lorentz_transform(beta, theta), cfg)


# ---------------------------------------------------------------------------
# the symmetry-of-dynamics check
# ---------------------------------------------------------------------------


def _kernel(pt: OnShellPoint) -> np.ndarray:
    n = n_vector(pt.k, pt.chirality)
    nsig = n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]
    return np.sin(pt.omega) * np.eye(2, dtype=complex) - nsig


def symmetry_residuals(
    pt: OnShellPoint,
    beta,
    theta=(0.0, 0.0, 0.0),
    cfg: DeformationConfig = DeformationConfig(),
    swap_handedness: bool = False,
) -> Tuple[float, float]:
    """(normalized, raw) deviation between the two sides of the invariance
    identity for the g-rescaled kernel.

    Regions 0 and 2 sandwich with (right, left) representatives; regions 1
    and 3 with the pair exchanged.  ``swap_handedness`` deliberately misassigns
    them as a negative control.
    """
    _require_plus(pt)
    pt2 = deformed_boost(pt, beta, theta, cfg)
    lam_r = spinor_rep(beta, theta, Handedness.RIGHT)
    lam_l = spinor_rep(beta, theta, Handedness.LEFT)
    exchanged = _REGION_FLIP[pt.region]
    if swap_handedness:
        exchanged = not exchanged
    gamma, gamma_tilde = (lam_l, lam_r) if exchanged else (lam_r, lam_l)
    q = reduce_to_region0(pt.k, pt.region)
    q2 = reduce_to_region0(pt2.k, pt2.region)
    omega_t = np.pi - pt.omega if _REGION_FLIP[pt.region] else pt.omega
    omega_t2 = np.pi - pt2.omega if _REGION_FLIP[pt2.region] else pt2.omega
    lhs = cfg.g(omega_t, q) * _kernel(pt)
    rhs = np.linalg.inv(gamma_tilde) @ (cfg.g(omega_t2, q2) * _kernel(pt2)) @ gamma
    raw = float(np.max(np.abs(lhs - rhs)))
    lhs_n = lhs / np.linalg.norm(lhs)
    rhs_n = rhs / np.linalg.norm(rhs)
    normalized = float(np.max(np.abs(lhs_n - rhs_n)))
    return normalized, raw


def check_symmetry(
    pt: OnShellPoint,
    beta,
    theta=(0.0, 0.0, 0.0),
    cfg: DeformationConfig = DeformationConfig(),
    swap_handedness: bool = False,
) -> float:
    """Normalized residual of the invariance identity (0 for a true symmetry)."""
    return symmetry_residuals(pt, beta, theta, cfg, swap_handedness)[0]


# ---------------------------------------------------------------------------
# sampling and diagnostics
# ---------------------------------------------------------------------------


def sample_onshell_points(
    n: int,
    rng,
    radius_frac: float = 1.0 / 3.0,
    min_frac: float = 0.05,
    region: int = 0,
    cfg: DeformationConfig = DeformationConfig(),
):
    """Random on-shell points whose reduced momentum sits well inside the
    verified ball, leaving headroom for |beta| <= 0.5 boosts."""
    out = []
    radius = cfg.safe_radius * radius_frac
    lo = cfg.safe_radius * min_frac
    while len(out) < n:
        q = rng.uniform(-radius, radius, size=3)
        if np.linalg.norm(q) < lo:
            continue
        k = unreduce_from_region0(q, region)
        out.append(OnShellPoint.from_k(k, region))
    return out


def jacobian_D_at_zero(cfg: DeformationConfig = DeformationConfig(), rescaled: bool = True) -> np.ndarray:
    """Numeric Jacobian of D at the origin of region 0.

    In raw lattice coordinates it is diag(1, 1/sqrt(3) I); in rescaled
    coordinates (k divided by sqrt(3)) it is the identity.
    """
    h = 1e-6
    J = np.empty((4, 4))
    scale = SQRT3 if rescaled else 1.0

    def d_of(xv):
        omega, k = xv[0], scale * xv[1:]
        g = cfg.g(omega, k)
        return g * np.concatenate(([np.sin(omega)], n_vector(k)))

    for j in range(4):
        x = np.zeros(4)
        x[j] = h
        J[:, j] = (d_of(x) - d_of(-x)) / (2 * h)
    return J
