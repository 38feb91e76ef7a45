"""The three-dimensional Weyl lattice walk.

One step of the walk multiplies each momentum component of the spinor field by

    A(k) = lam(k) I - i n(k) . sigma      (plus chirality; sigma^T for minus)

with, writing c_a = cos(k_a / sqrt(3)) and s_a = sin(k_a / sqrt(3)),

    n(k)   = (s c c + s* c s s,  c s c - s* s c s,  c c s + s* s s c)
    lam(k) = c c c - s* s s s

where s* = +1 / -1 selects the chirality.  lam^2 + |n|^2 = 1 holds as a trig
identity, so A(k) is unitary at every k.  The walk lives on the body-centered
cubic graph; on the simulation grid the eight hops are the integer vectors
(+-1, +-1, +-1) and the physical 1/sqrt(3) scale lives only in k.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import List, Tuple

import numpy as np

SQRT3 = np.sqrt(3.0)

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

# momenta where n vanishes and a relativistic regime opens up
K_SPECIAL = np.array(
    [
        [0.0, 0.0, 0.0],
        [SQRT3 * np.pi / 2, SQRT3 * np.pi / 2, SQRT3 * np.pi / 2],
        [-SQRT3 * np.pi / 2, -SQRT3 * np.pi / 2, -SQRT3 * np.pi / 2],
        [SQRT3 * np.pi, 0.0, 0.0],
    ]
)

# reciprocal lattice of the BCC hop set: FCC, generated by these columns
RECIPROCAL_BASIS = SQRT3 * np.pi * np.array(
    [[1.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]
).T


class Chirality(enum.Enum):
    PLUS = 1
    MINUS = -1


def _trig(k):
    u = np.asarray(k, dtype=float) / SQRT3
    return np.cos(u), np.sin(u)


def n_vector(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    """The walk's momentum-space direction field; shape (..., 3)."""
    c, s = _trig(k)
    sgn = chirality.value
    cx, cy, cz = c[..., 0], c[..., 1], c[..., 2]
    sx, sy, sz = s[..., 0], s[..., 1], s[..., 2]
    return np.stack(
        [
            sx * cy * cz + sgn * cx * sy * sz,
            cx * sy * cz - sgn * sx * cy * sz,
            cx * cy * sz + sgn * sx * sy * cz,
        ],
        axis=-1,
    )


def lambda_scalar(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    c, s = _trig(k)
    sgn = chirality.value
    return c[..., 0] * c[..., 1] * c[..., 2] - sgn * s[..., 0] * s[..., 1] * s[..., 2]


def _sigma_dot(n, chirality: Chirality) -> np.ndarray:
    """n . sigma for plus, n . sigma^T for minus; shape (..., 2, 2)."""
    ny = n[..., 1] if chirality is Chirality.PLUS else -n[..., 1]
    nx, nz = n[..., 0], n[..., 2]
    out = np.empty(n.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = nz
    out[..., 0, 1] = nx - 1j * ny
    out[..., 1, 0] = nx + 1j * ny
    out[..., 1, 1] = -nz
    return out


def walk_operator_k(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    """The single-step unitary at momentum k; shape (..., 2, 2)."""
    lam = lambda_scalar(k, chirality)
    n = n_vector(k, chirality)
    eye = np.eye(2, dtype=complex)
    return lam[..., None, None] * eye - 1j * _sigma_dot(n, chirality)


def dispersion(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    """Positive-frequency branch omega = arccos(lam) in [0, pi]; the shell
    condition sin^2(omega) = |n|^2 follows from lam^2 + |n|^2 = 1."""
    lam = lambda_scalar(k, chirality)
    return np.arccos(np.clip(lam, -1.0, 1.0))


def group_velocity(k, chirality: Chirality = Chirality.PLUS) -> np.ndarray:
    """Gradient of the positive branch with respect to physical k.

    Undefined at the conical points where |n| = 0.
    """
    c, s = _trig(k)
    sgn = chirality.value
    cx, cy, cz = c[..., 0], c[..., 1], c[..., 2]
    sx, sy, sz = s[..., 0], s[..., 1], s[..., 2]
    grad_lam = -np.stack(
        [
            sx * cy * cz + sgn * cx * sy * sz,
            cx * sy * cz + sgn * sx * cy * sz,
            cx * cy * sz + sgn * sx * sy * cz,
        ],
        axis=-1,
    ) / SQRT3
    n = n_vector(k, chirality)
    norm = np.linalg.norm(n, axis=-1)
    if np.any(norm < 1e-12):
        raise ValueError("group velocity undefined at a conical point")
    return -grad_lam / norm[..., None]


def reduce_to_zone(k) -> np.ndarray:
    """Translate k into the first Brillouin zone (the rhombic dodecahedron
    |k_a +- k_b| <= sqrt(3) pi) by the nearest reciprocal-lattice vector."""
    k = np.asarray(k, dtype=float)
    coeffs = np.linalg.solve(RECIPROCAL_BASIS, k)
    base = np.round(coeffs)
    best = None
    best_norm = np.inf
    for offset in product((-1, 0, 1), repeat=3):
        m = base + np.array(offset)
        cand = k - RECIPROCAL_BASIS @ m
        nrm = float(np.dot(cand, cand))
        if nrm < best_norm - 1e-15:
            best_norm = nrm
            best = cand
    return best


def in_first_zone(k, tol: float = 1e-9) -> bool:
    k = np.asarray(k, dtype=float)
    lim = SQRT3 * np.pi + tol
    for a in range(3):
        for b in range(a + 1, 3):
            if abs(k[a] + k[b]) > lim or abs(k[a] - k[b]) > lim:
                return False
    return True


def eigenmodes(k, chirality: Chirality = Chirality.PLUS, tol: float = 1e-12):
    """The two on-shell modes at k as (omega, spinor) pairs.

    Returns [(+omega, psi+), (-omega, psi-)] where each pair solves
    (sin(omega) I - n . sigma) psi = 0 and A(k) psi = exp(-i omega) psi.
    At the conical points the canonical basis is returned.
    """
    k = np.asarray(k, dtype=float)
    omega = float(dispersion(k, chirality))
    n = n_vector(k, chirality)
    if chirality is Chirality.MINUS:
        n = n * np.array([1.0, -1.0, 1.0])  # sigma^T absorbs a sign on y
    norm = float(np.linalg.norm(n))
    if norm < tol:
        return [(omega, np.array([1.0, 0.0], dtype=complex)),
                (-omega, np.array([0.0, 1.0], dtype=complex))]
    nx, ny, nz = n / norm
    if nz > -0.5:
        plus = np.array([1.0 + nz, nx + 1j * ny], dtype=complex)
    else:
        plus = np.array([nx - 1j * ny, 1.0 - nz], dtype=complex)
    plus = plus / np.linalg.norm(plus)
    minus = np.array([-np.conj(plus[1]), np.conj(plus[0])], dtype=complex)
    return [(omega, plus), (-omega, minus)]


# ---------------------------------------------------------------------------
# position space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodScheme:
    """The eight hop matrices: A(k) = sum_y exp(i k . y) A_y."""

    displacements: np.ndarray  # (8, 3) physical vectors (+-1,+-1,+-1)/sqrt(3)
    matrices: np.ndarray  # (8, 2, 2) complex

    @property
    def grid_steps(self) -> np.ndarray:
        """Integer hop vectors on the embedding cubic grid."""
        return np.rint(self.displacements * SQRT3).astype(int)

    def reconstruct(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        phases = np.exp(1j * self.displacements @ k)
        return np.tensordot(phases, self.matrices, axes=(0, 0))


def neighborhood_matrices(chirality: Chirality = Chirality.PLUS) -> NeighborhoodScheme:
    """Expand the trigonometric products of A(k) into the eight exponentials
    exp(i(+-k_x +- k_y +- k_z)/sqrt(3)) and collect the 2x2 coefficients.

    Every cosine contributes 1/2 per sign, every sine contributes -i y/2, so
    each coefficient is a Gaussian rational with denominator 8.
    """
    sgn = chirality.value
    disps = []
    mats = []
    eye = np.eye(2, dtype=complex)
    for y in product((1, -1), repeat=3):
        y1, y2, y3 = y
        lam_y = (1.0 - 1j * sgn * y1 * y2 * y3) / 8.0
        n_y = np.array(
            [
                (-1j * y1 - sgn * y2 * y3) / 8.0,
                (-1j * y2 + sgn * y1 * y3) / 8.0,
                (-1j * y3 - sgn * y1 * y2) / 8.0,
            ]
        )
        disps.append(np.array(y, dtype=float) / SQRT3)
        mats.append(lam_y * eye - 1j * _sigma_dot(n_y, chirality))
    return NeighborhoodScheme(np.array(disps), np.array(mats))


@dataclass(frozen=True)
class LatticeState:
    """A normalized spinor field on the N^3 periodic grid, indexed [x, y, z, s]."""

    N: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.N <= 0 or self.N % 2 != 0:
            raise ValueError("grid side must be a positive even integer")
        if self.amplitudes.shape != (self.N, self.N, self.N, 2):
            raise ValueError("amplitudes must have shape (N, N, N, 2)")
        nrm = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state not normalized: |psi|^2 = {nrm}")

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def density(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=-1)

    def centroid(self) -> np.ndarray:
        """Circular mean of the position marginal, in grid units."""
        rho = self.density()
        out = np.empty(3)
        for axis in range(3):
            marg = rho.sum(axis=tuple(a for a in range(3) if a != axis))
            angles = 2.0 * np.pi * np.arange(self.N) / self.N
            z = np.sum(marg * np.exp(1j * angles))
            out[axis] = (np.angle(z) % (2.0 * np.pi)) * self.N / (2.0 * np.pi)
        return out

    def spread(self) -> np.ndarray:
        """Standard deviation per axis about the (unwrapped) centroid."""
        rho = self.density()
        cen = self.centroid()
        out = np.empty(3)
        for axis in range(3):
            marg = rho.sum(axis=tuple(a for a in range(3) if a != axis))
            d = np.arange(self.N) - cen[axis]
            d = (d + self.N / 2) % self.N - self.N / 2
            out[axis] = np.sqrt(np.sum(marg * d**2))
        return out


def delta_state(N: int, spinor=(1.0, 0.0), site=(0, 0, 0)) -> LatticeState:
    amp = np.zeros((N, N, N, 2), dtype=complex)
    spinor = np.asarray(spinor, dtype=complex)
    amp[site[0], site[1], site[2]] = spinor / np.linalg.norm(spinor)
    return LatticeState(N, amp)


def gaussian_packet(
    N: int,
    k_center,
    width: float,
    chirality: Chirality = Chirality.PLUS,
    branch: int = +1,
    center=None,
) -> LatticeState:
    """Narrowband packet: Gaussian envelope times a plane wave, projected on
    one band's spinor at k_center.  k_center is in physical units; the plane
    wave on the grid uses k_center / sqrt(3)."""
    if center is None:
        center = (N // 2, N // 2, N // 2)
    coords = np.arange(N)
    dx = [(coords - center[a] + N // 2) % N - N // 2 for a in range(3)]
    X, Y, Z = np.meshgrid(*dx, indexing="ij")
    envelope = np.exp(-(X**2 + Y**2 + Z**2) / (4.0 * width**2))
    k_grid = np.asarray(k_center, dtype=float) / SQRT3
    phase = np.exp(1j * (k_grid[0] * X + k_grid[1] * Y + k_grid[2] * Z))
    modes = eigenmodes(k_center, chirality)
    spinor = modes[0][1] if branch >= 0 else modes[1][1]
    amp = (envelope * phase)[..., None] * spinor[None, None, None, :]
    amp = amp / np.sqrt(np.sum(np.abs(amp) ** 2))
    return LatticeState(N, amp)


def _operator_grid(N: int, chirality: Chirality, n_steps: int) -> np.ndarray:
    """A(k)^n on the FFT momentum grid, shape (N, N, N, 2, 2).

    A = exp(-i omega nhat . sigma), so the power is taken through cos/sin of
    n_steps * omega rather than by repeated multiplication.
    """
    u = 2.0 * np.pi * np.arange(N) / N  # = k_phys / sqrt(3) on the grid
    cu, su = np.cos(u), np.sin(u)
    cx, cy, cz = np.meshgrid(cu, cu, cu, indexing="ij")
    sx, sy, sz = np.meshgrid(su, su, su, indexing="ij")
    sgn = chirality.value
    lam = cx * cy * cz - sgn * sx * sy * sz
    n = np.stack(
        [
            sx * cy * cz + sgn * cx * sy * sz,
            cx * sy * cz - sgn * sx * cy * sz,
            cx * cy * sz + sgn * sx * sy * cz,
        ],
        axis=-1,
    )
    omega = np.arccos(np.clip(lam, -1.0, 1.0))
    norm = np.linalg.norm(n, axis=-1)
    nhat = n / np.maximum(norm, 1e-300)[..., None]
    cosn = np.cos(n_steps * omega)
    sinn = np.sin(n_steps * omega)  # vanishes where |n| = 0, any nhat works
    eye = np.eye(2, dtype=complex)
    return cosn[..., None, None] * eye - 1j * sinn[..., None, None] * _sigma_dot(
        nhat, chirality
    )


def step(state: LatticeState, chirality: Chirality = Chirality.PLUS, n_steps: int = 1) -> LatticeState:
    """Evolve by n_steps applications of the walk via FFT and the momentum
    eigendecomposition; exact in the step count, norm preserved."""
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if n_steps == 0:
        return state
    op = _operator_grid(state.N, chirality, n_steps)
    ft = np.fft.fftn(state.amplitudes, axes=(0, 1, 2))
    ft = np.einsum("xyzab,xyzb->xyza", op, ft)
    amp = np.fft.ifftn(ft, axes=(0, 1, 2))
    return LatticeState(state.N, amp)


def step_position_space(state: LatticeState, chirality: Chirality = Chirality.PLUS) -> LatticeState:
    """One step by explicit shifts: psi'(x) = sum_y A_y psi(x + y).

    Direct oracle for the FFT path.
    """
    scheme = neighborhood_matrices(chirality)
    out = np.zeros_like(state.amplitudes)
    for y, mat in zip(scheme.grid_steps, scheme.matrices):
        shifted = np.roll(state.amplitudes, shift=(-y[0], -y[1], -y[2]), axis=(0, 1, 2))
        out += np.einsum("ab,xyzb->xyza", mat, shifted)
    return LatticeState(state.N, out)
