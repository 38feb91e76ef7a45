"""Closed-form target tables for the walk basis.

These are built directly from the cyclic index formulas (spatial indices
1, 2, 3 cycled mod 3, with the sign flip on the second row), independently of
the engine, so that equality tests between the engine output and these tables
are meaningful.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .coeffs import qi
from .phase import PhaseElem
from .poly import Poly


def _cyc(i: int) -> int:
    """Next spatial index: 1 -> 2 -> 3 -> 1."""
    return 1 + (i % 3)


def expected_classical_heisenberg() -> Dict[Tuple[int, int], PhaseElem]:
    """[g_mu, x_nu] for the classical model in the walk basis:
    [g0, x0] = i, diagonals -i, and the cyclic 1/kappa couplings with the
    sign flip on row 2."""
    table: Dict[Tuple[int, int], PhaseElem] = {}
    for mu in range(4):
        for nu in range(4):
            table[(mu, nu)] = PhaseElem.zero()
    table[(0, 0)] = PhaseElem.const(qi(0, 1))
    for i in (1, 2, 3):
        table[(i, i)] = PhaseElem.const(qi(0, -1))
        sign = -1 if i == 2 else 1
        j1, j2 = _cyc(i), _cyc(_cyc(i))
        # [g_i, x_{i+1}] = -i sign k_{i+2} / kappa ; [g_i, x_{i+2}] = -i sign k_{i+1} / kappa
        table[(i, j1)] = PhaseElem.from_momentum(
            Poly.gen(j2).kappa_shift(1).scale(qi(0, -sign))
        )
        table[(i, j2)] = PhaseElem.from_momentum(
            Poly.gen(j1).kappa_shift(1).scale(qi(0, -sign))
        )
    return table


def expected_kappa_spacetime() -> Dict[Tuple[int, int], PhaseElem]:
    """[x0, x_i] = -(i/kappa) x_i and commuting spatial positions."""
    table: Dict[Tuple[int, int], PhaseElem] = {}
    for mu in range(4):
        for nu in range(mu + 1, 4):
            if mu == 0:
                table[(mu, nu)] = PhaseElem.x_gen(nu).kappa_shift(1).scale(qi(0, -1))
            else:
                table[(mu, nu)] = PhaseElem.zero()
    return table


def expected_kappa_heisenberg_spatial() -> Dict[Tuple[int, int], PhaseElem]:
    """The asserted entries of the kappa-model walk-basis table:
    [g_i, x_j] = -i delta_ij (1 - g0/kappa) + cyclic terms, [g_i, x0] = 0."""
    table = expected_classical_heisenberg()
    out: Dict[Tuple[int, int], PhaseElem] = {}
    for i in (1, 2, 3):
        for j in range(4):
            entry = table[(i, j)]
            if i == j:
                entry = entry + PhaseElem.from_momentum(
                    Poly.gen(0).kappa_shift(1).scale(qi(0, 1))
                )
            out[(i, j)] = entry
    return out


# entries the cross-product algebra cannot reproduce: the documented forms mix
# a position operator into a momentum-sector commutator
DOCUMENTED_ILL_FORMED = {
    "[g0,x_j]": "i*k_j/kappa - x_j*|k|^2/(2*kappa)",
    "[g0,x0]": "i - x_j*|k|^2/(2*kappa)",
}
