"""Numeric check that the full deformed coproducts degenerate correctly.

The full classical-basis coproducts are evaluated as two-argument functions
(slot 1 at momentum sample a, slot 2 at sample b) through

    K(p)     = (p0 + sqrt(p0^2 - |p|^2 + kappa^2)) / kappa
    D(p0)    = (kappa/2) (K (x) K - K^-1 (x) K^-1)
               + (1/2 kappa) (K^-1 |p|^2 (x) K^-1 + K^-1 (x) K^-1 |p|^2)
               + (1/kappa)   (K^-1 p_i (x) p_i)
    D(p_i)   = p_i (x) K + 1 (x) p_i

The 1/kappa placement on the trailing groups is the one for which the order
1/kappa coefficient reproduces the bilinear truncation used by the symbolic
engine; the displayed grouping in the source material is ambiguous and only
this numeric module commits to a reading.

Deviations from the primitive coproduct are assembled from K - 1 directly
(never as a difference of O(kappa) quantities), so they stay accurate even
at kappa = 1e6 where the deviation itself is ~1e-7.
"""

from __future__ import annotations

import numpy as np


def k_factor_minus_one(p, kappa: float) -> float:
    """K(p) - 1, computed without cancellation."""
    p = np.asarray(p, dtype=float)
    m2 = p[0] ** 2 - np.dot(p[1:], p[1:])
    root_minus_kappa = m2 / (np.sqrt(m2 + kappa**2) + kappa)
    return (p[0] + root_minus_kappa) / kappa


def k_factor(p, kappa: float) -> float:
    return 1.0 + k_factor_minus_one(p, kappa)


def delta_p0_deviation(a, b, kappa: float) -> float:
    """full Delta(p0)(a, b) minus the primitive value a0 + b0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ka1 = k_factor_minus_one(a, kappa)
    kb1 = k_factor_minus_one(b, kappa)
    p1 = ka1 + kb1 + ka1 * kb1  # K_a K_b - 1
    prod = 1.0 + p1
    half = (prod + 1.0) / (2.0 * prod)
    # kappa (K_a K_b - 1) - (a0 + b0), each piece O(1/kappa)
    ra = kappa * ka1 - a[0]
    rb = kappa * kb1 - b[0]
    excess = ra + rb + (kappa * ka1) * kb1
    main_dev = excess * half - (a[0] + b[0]) * p1 / (2.0 * prod)
    sq_a = np.dot(a[1:], a[1:])
    sq_b = np.dot(b[1:], b[1:])
    ka, kb = 1.0 + ka1, 1.0 + kb1
    tail = (sq_a + sq_b) / (2.0 * kappa * ka * kb)
    cross = np.dot(a[1:], b[1:]) / (ka * kappa)
    return float(main_dev + tail + cross)


def delta_pi_deviation(a, b, i: int, kappa: float) -> float:
    """full Delta(p_i)(a, b) minus the primitive value a_i + b_i."""
    a = np.asarray(a, dtype=float)
    return float(a[i] * k_factor_minus_one(b, kappa))


def full_delta_p0(a, b, kappa: float) -> float:
    return float(a[0] + b[0] + delta_p0_deviation(a, b, kappa))


def full_delta_pi(a, b, i: int, kappa: float) -> float:
    return float(a[i] + b[i] + delta_pi_deviation(a, b, i, kappa))


def primitive_value(a, b, mu: int) -> float:
    return float(a[mu] + b[mu])


def bilinear_correction(a, b, mu: int) -> float:
    """The symbolic engine's 1/kappa coefficient, evaluated numerically."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if mu == 0:
        return float(np.dot(a[1:], b[1:]))
    return float(a[mu] * b[0])


def kappa_classical_limit(kappa_values, n_samples: int = 20, seed: int = 7) -> dict:
    """Convergence-rate and truncation-match report.

    For each sample pair (a, b) and each kappa the deviation of the full
    coproduct from the primitive one must scale like 1/kappa, and must match
    the symbolic bilinear correction up to an O(1/kappa^2) remainder.
    """
    kappa_values = [float(k) for k in kappa_values]
    if any(k <= 0 for k in kappa_values) or sorted(kappa_values) != kappa_values:
        raise ValueError("kappa values must be positive and increasing")
    rng = np.random.default_rng(seed)
    samples = rng.uniform(-0.5, 0.5, size=(n_samples, 2, 4))
    rows = []
    worst_ratio_err = 0.0
    worst_match_err = 0.0
    for a, b in samples:
        deviations = {}
        for kappa in kappa_values:
            devs = [delta_p0_deviation(a, b, kappa)]
            for i in (1, 2, 3):
                devs.append(delta_pi_deviation(a, b, i, kappa))
            deviations[kappa] = devs
            for mu in range(4):
                err = abs(devs[mu] - bilinear_correction(a, b, mu) / kappa)
                worst_match_err = max(worst_match_err, err * kappa**2)
        if len(kappa_values) >= 2:
            k_lo, k_hi = kappa_values[0], kappa_values[-1]
            for mu in range(4):
                lo, hi = deviations[k_lo][mu], deviations[k_hi][mu]
                if abs(lo) * k_lo < 1e-2:
                    continue  # leading coefficient too small for a rate estimate
                ratio = abs(hi) / abs(lo)
                expected = k_lo / k_hi
                worst_ratio_err = max(worst_ratio_err, abs(ratio / expected - 1.0))
        rows.append(
            {
                "a": [float(v) for v in a],
                "b": [float(v) for v in b],
                "deviation_at_kappa": {str(k): deviations[k] for k in kappa_values},
            }
        )
    return {
        "kappa_values": kappa_values,
        "n_samples": n_samples,
        "worst_convergence_ratio_error": float(worst_ratio_err),
        "worst_truncation_match_scaled": float(worst_match_err),
        "ratio_ok": bool(worst_ratio_err < 0.10),
        "truncation_ok": bool(worst_match_err < 10.0),
        "samples": rows,
    }
