"""Structure constants of the symmetry algebra and their exact checks.

Generators: M1..M3 (rotations), N1..N3 (boosts), g0..g3 (translations).
Brackets:

    [M_i, M_j] = i eps_ijk M_k        [M_i, g_j] = i eps_ijk g_k
    [M_i, N_j] = i eps_ijk N_k        [M_i, g_0] = 0
    [N_i, N_j] = -i eps_ijk M_k       [N_i, g_j] = i delta_ij g_0
    [N_i, g_0] = i g_i                [g_mu, g_nu] = 0

The boost-on-energy bracket is fixed by Jacobi closure together with
[N_i, g_j] = i delta_ij g_0 (an [N_i, g_0] proportional to g_0 cannot close).
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, Tuple

import numpy as np

from .coeffs import I, QI, ZERO, qi

# generator labels: rotations, boosts, translations
GENERATORS: Tuple[str, ...] = (
    "M1", "M2", "M3", "N1", "N2", "N3", "p0", "p1", "p2", "p3",
)

_EPS = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
        (2, 1, 3): -1, (3, 2, 1): -1, (1, 3, 2): -1}


def _eps(i: int, j: int, k: int) -> int:
    return _EPS.get((i, j, k), 0)


Element = Dict[str, QI]  # linear combination of generators


def _add(a: Element, b: Element) -> Element:
    out = dict(a)
    for g, c in b.items():
        s = out.get(g, ZERO) + c
        if s.is_zero():
            out.pop(g, None)
        else:
            out[g] = s
    return out


def _scale(a: Element, c: QI) -> Element:
    return {g: v * c for g, v in a.items() if not (v * c).is_zero()}


class LieStructure:
    """Bracket table with exact Q[i] coefficients."""

    def __init__(self):
        self.table: Dict[Tuple[str, str], Element] = {}
        for i in range(1, 4):
            for j in range(1, 4):
                mm: Element = {}
                mn: Element = {}
                nn: Element = {}
                for k in range(1, 4):
                    e = _eps(i, j, k)
                    if e:
                        mm[f"M{k}"] = qi(0, e)
                        mn[f"N{k}"] = qi(0, e)
                        nn[f"M{k}"] = qi(0, -e)
                self._set(f"M{i}", f"M{j}", mm)
                self._set(f"M{i}", f"N{j}", mn)
                self._set(f"N{i}", f"N{j}", nn)
                mp: Element = {}
                for k in range(1, 4):
                    e = _eps(i, j, k)
                    if e:
                        mp[f"p{k}"] = qi(0, e)
                self._set(f"M{i}", f"p{j}", mp)
            self._set(f"M{i}", "p0", {})
            self._set(f"N{i}", "p0", {f"p{i}": I})
            for j in range(1, 4):
                self._set(f"N{i}", f"p{j}", {"p0": I} if i == j else {})
        for mu in range(4):
            for nu in range(4):
                self._set(f"p{mu}", f"p{nu}", {})

    def _set(self, a: str, b: str, value: Element) -> None:
        self.table[(a, b)] = value
        self.table[(b, a)] = _scale(value, qi(-1))

    def bracket(self, a: str, b: str) -> Element:
        if a == b:
            return {}
        return self.table[(a, b)]

    def bracket_elements(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for ga, ca in a.items():
            for gb, cb in b.items():
                out = _add(out, _scale(self.bracket(ga, gb), ca * cb))
        return out

    def antisymmetry_holds(self) -> bool:
        for (a, b), v in self.table.items():
            back = _scale(self.table[(b, a)], qi(-1))
            if v != back:
                return False
        return True

    def jacobi_defect(self, a: str, b: str, c: str) -> Element:
        ea, eb, ec = ({a: qi(1)}, {b: qi(1)}, {c: qi(1)})
        out = self.bracket_elements(ea, self.bracket_elements(eb, ec))
        out = _add(out, self.bracket_elements(eb, self.bracket_elements(ec, ea)))
        out = _add(out, self.bracket_elements(ec, self.bracket_elements(ea, eb)))
        return out

    def jacobi_holds(self) -> bool:
        return all(
            not self.jacobi_defect(a, b, c)
            for a, b, c in combinations(GENERATORS, 3)
        )

    def boost_action_matrix(self, i: int) -> np.ndarray:
        """Matrix B with [N_i, p_mu] = i sum_nu B[mu, nu] p_nu."""
        return self._action_matrix(f"N{i}")

    def rotation_action_matrix(self, i: int) -> np.ndarray:
        return self._action_matrix(f"M{i}")

    def _action_matrix(self, gen: str) -> np.ndarray:
        out = np.zeros((4, 4))
        for mu in range(4):
            for nu_name, c in self.bracket(gen, f"p{mu}").items():
                nu = int(nu_name[1])
                if c.re != 0:
                    raise ValueError("momentum action must be purely imaginary")
                out[mu, nu] = float(c.im)
        return out


def lie_checks(fd_step: float = 1e-6) -> dict:
    """Exact algebra checks plus a finite-difference match against the
    linear boost/rotation matrices acting on momentum vectors."""
    from .. import lorentz

    ls = LieStructure()
    report = {
        "antisymmetry": ls.antisymmetry_holds(),
        "jacobi": ls.jacobi_holds(),
        "boost_generator_match": [],
        "rotation_generator_match": [],
    }
    axes = np.eye(3)
    for i in (1, 2, 3):
        direction = axes[i - 1]
        num = (lorentz.boost_matrix(fd_step * direction) - np.eye(4)) / fd_step
        err = float(np.max(np.abs(num - ls.boost_action_matrix(i))))
        report["boost_generator_match"].append(err)
        # vector-operator components pick up the transposed rotation generator
        num_r = (lorentz.rotation_matrix(fd_step * direction) - np.eye(4)) / fd_step
        err_r = float(np.max(np.abs(num_r.T - ls.rotation_action_matrix(i))))
        report["rotation_generator_match"].append(err_r)
    report["max_generator_error"] = max(
        report["boost_generator_match"] + report["rotation_generator_match"]
    )
    report["ok"] = bool(
        report["antisymmetry"] and report["jacobi"] and report["max_generator_error"] < 10 * fd_step
    )
    return report
