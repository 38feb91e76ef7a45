"""Dual spacetime and cross-product phase space for a coproduct model.

The position algebra is generated by x0..x3, dual to the current momentum
generator basis through a constant pairing matrix ``C[mu][nu] = <g_mu, x_nu>``.
The shipped constants are diag(i, -i, -i, -i); this is the normalization that
makes the canonical table come out as [g_i, x_j] = -i delta_ij and
[g_0, x_0] = +i, and it is printed in every exported report.

Spacetime commutators are solved from duality: the antisymmetric part of the
transported coproducts determines [x_mu, x_nu] as an x-linear element.

Momentum/position commutators are evaluated as

    [f, x_nu] = sum <f_(1), x_nu> S(f_(2))

with the antipode on the second leg.  With the plain smash-product rule
(no antipode) every 1/kappa correction flips sign; the antipode convention is
the one that matches the published closed-form tables, and a ``twist`` flag
exposes the other convention for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffs import I, MINUS_I, QI, ZERO, as_qi, qi
from .models import (
    BasisMap,
    CoproductModel,
    antipode_of,
    antipode_table,
    classical_model,
    coproduct_of,
    identity_map,
    transported_coproducts,
)
from .poly import (
    DegreeOverflow,
    MAX_DEGREE,
    MAX_KAPPA,
    Expv,
    Poly,
    ZERO_EXP,
    exp_degree,
    monomial_str,
)
from .tensor import Tensor2

X_NAMES = ("x0", "x1", "x2", "x3")

DEFAULT_PAIRING: Tuple[Tuple[QI, ...], ...] = tuple(
    tuple((I if mu == 0 else MINUS_I) if mu == nu else ZERO for nu in range(4))
    for mu in range(4)
)


def _matrix_inverse(c: Sequence[Sequence[QI]]) -> List[List[QI]]:
    """Gauss-Jordan inverse of a 4x4 matrix over Q[i]."""
    n = 4
    a = [[c[i][j] for j in range(n)] for i in range(n)]
    inv = [[as_qi(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise ValueError("pairing constant matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col].inverse()
        a[col] = [v * scale for v in a[col]]
        inv[col] = [v * scale for v in inv[col]]
        for r in range(n):
            if r == col or a[r][col].is_zero():
                continue
            f = a[r][col]
            a[r] = [a[r][j] - f * a[col][j] for j in range(n)]
            inv[r] = [inv[r][j] - f * inv[col][j] for j in range(n)]
    return inv


# ---------------------------------------------------------------------------
# normal-ordered phase-space elements
# ---------------------------------------------------------------------------

PKey = Tuple[int, Expv, Expv]  # (kappa power, x exponents, momentum exponents)


class PhaseElem:
    """Normal-ordered polynomial in x0..x3 and the momentum generators.

    Monomials are stored as exponent vectors with every x to the left of every
    momentum generator and indices ascending inside each block; products are
    reordered through the model's commutator tables by ``PhaseSpace.mul``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[PKey, QI] | None = None):
        cleaned: Dict[PKey, QI] = {}
        if terms:
            for (w, xe, pe), c in terms.items():
                if c.is_zero() or w > MAX_KAPPA:
                    continue
                if exp_degree(xe) + exp_degree(pe) > MAX_DEGREE:
                    continue
                cleaned[(w, xe, pe)] = c
        self.terms = cleaned

    @staticmethod
    def zero() -> "PhaseElem":
        return PhaseElem()

    @staticmethod
    def const(c) -> "PhaseElem":
        return PhaseElem({(0, ZERO_EXP, ZERO_EXP): as_qi(c)})

    @staticmethod
    def x_gen(nu: int) -> "PhaseElem":
        e = [0, 0, 0, 0]
        e[nu] = 1
        return PhaseElem({(0, tuple(e), ZERO_EXP): as_qi(1)})

    @staticmethod
    def x_monomial(xe: Expv, coeff=1, kappa_power: int = 0) -> "PhaseElem":
        return PhaseElem({(kappa_power, xe, ZERO_EXP): as_qi(coeff)})

    @staticmethod
    def from_momentum(p: Poly) -> "PhaseElem":
        return PhaseElem({(w, ZERO_EXP, e): c for (w, e), c in p.terms.items()})

    def __add__(self, other: "PhaseElem") -> "PhaseElem":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return PhaseElem(out)

    def __sub__(self, other: "PhaseElem") -> "PhaseElem":
        return self + (-other)

    def __neg__(self) -> "PhaseElem":
        return PhaseElem({k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "PhaseElem":
        c = as_qi(c)
        return PhaseElem({k: v * c for k, v in self.terms.items()})

    def kappa_shift(self, n: int = 1) -> "PhaseElem":
        return PhaseElem(
            {(w + n, xe, pe): c for (w, xe, pe), c in self.terms.items() if w + n <= MAX_KAPPA}
        )

    def drop_kappa(self) -> "PhaseElem":
        return PhaseElem({k: c for k, c in self.terms.items() if k[0] == 0})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, PhaseElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        from .poly import GEN_NAMES

        bits = []
        for (w, xe, pe), c in sorted(self.terms.items()):
            xm = monomial_str(xe, X_NAMES)
            pm = monomial_str(pe, GEN_NAMES)
            mono = "*".join(m for m in (xm, pm) if m != "1") or "1"
            kap = "" if w == 0 else "/kappa"
            bits.append(f"{c}*{mono}{kap}" if mono != "1" else f"{c}{kap}")
        return " + ".join(bits)

    __repr__ = __str__


def _tokens(xe: Expv, pe: Expv) -> List[Tuple[str, int]]:
    toks: List[Tuple[str, int]] = []
    for nu in range(4):
        toks.extend([("x", nu)] * xe[nu])
    for mu in range(4):
        toks.extend([("p", mu)] * pe[mu])
    return toks


def _collect(toks: Sequence[Tuple[str, int]]) -> Tuple[Expv, Expv]:
    xe = [0, 0, 0, 0]
    pe = [0, 0, 0, 0]
    for kind, idx in toks:
        (xe if kind == "x" else pe)[idx] += 1
    return tuple(xe), tuple(pe)


# ---------------------------------------------------------------------------
# the phase-space context
# ---------------------------------------------------------------------------


@dataclass
class PhaseSpace:
    """Everything derived from one (model, basis map, pairing) choice."""

    model: CoproductModel
    bmap: BasisMap
    constants: Tuple[Tuple[QI, ...], ...] = DEFAULT_PAIRING
    twist: bool = True  # antipode on the second coproduct leg

    def __post_init__(self):
        self.deltas = transported_coproducts(self.model, self.bmap)
        self.s_table = antipode_table(self.deltas)
        self.c_inv = _matrix_inverse(self.constants)
        self.xx = self._solve_spacetime()
        self.px = {
            (mu, nu): self._commutator_with_x(Poly.gen(mu), nu)
            for mu in range(4)
            for nu in range(4)
        }

    # -- pairing -----------------------------------------------------------

    def _pair_single(self, e: Expv, nu: int, w: int) -> QI | None:
        """<monomial, x_nu> for a single momentum monomial; None means zero."""
        if exp_degree(e) != 1 or w > MAX_KAPPA:
            return None
        mu = next(i for i in range(4) if e[i])
        c = self.constants[mu][nu]
        return None if c.is_zero() else c

    def pairing(self, f: Poly, xmono: Expv) -> Poly:
        """<f, x^xmono> as a kappa-graded scalar (a constant Poly)."""
        deg = exp_degree(xmono)
        if deg > MAX_DEGREE:
            raise DegreeOverflow("position monomial beyond degree 2")
        if f.max_degree() > MAX_DEGREE:
            raise DegreeOverflow("momentum input beyond degree 2")
        if deg == 0:
            return Poly(
                {(w, ZERO_EXP): c for (w, e), c in f.terms.items() if e == ZERO_EXP}
            )
        if deg == 1:
            nu = next(i for i in range(4) if xmono[i])
            out: Dict = {}
            for (w, e), c in f.terms.items():
                pc = self._pair_single(e, nu, w)
                if pc is None:
                    continue
                key = (w, ZERO_EXP)
                s = out.get(key, ZERO) + c * pc
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
            return Poly(out)
        # degree 2: <f, x y> = <Delta f, x (x) y> through the model coproduct
        nus = [i for i in range(4) for _ in range(xmono[i])]
        nu1, nu2 = nus
        d = coproduct_of(f, self.deltas)
        out = Poly.zero()
        for (w, e1, e2), c in d.terms.items():
            c1 = self._pair_single(e1, nu1, w)
            if c1 is None:
                continue
            c2 = self._pair_single(e2, nu2, w)
            if c2 is None:
                continue
            out = out + Poly.monomial(c * c1 * c2, ZERO_EXP, w)
        return out

    def pair_tensor(self, t: Tensor2, nu1: int, nu2: int) -> Poly:
        """<t, x_nu1 (x) x_nu2> as a kappa-graded scalar."""
        out: Dict = {}
        for (w, e1, e2), c in t.terms.items():
            c1 = self._pair_single(e1, nu1, w)
            if c1 is None:
                continue
            c2 = self._pair_single(e2, nu2, w)
            if c2 is None:
                continue
            key = (w, ZERO_EXP)
            s = out.get(key, ZERO) + c * c1 * c2
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(out)

    # -- spacetime ----------------------------------------------------------

    def _solve_spacetime(self) -> Dict[Tuple[int, int], PhaseElem]:
        table: Dict[Tuple[int, int], PhaseElem] = {}
        for mu in range(4):
            for nu in range(mu + 1, 4):
                t_sigma = [
                    self.pair_tensor(self.deltas[s], mu, nu)
                    - self.pair_tensor(self.deltas[s], nu, mu)
                    for s in range(4)
                ]
                elem = PhaseElem.zero()
                for rho in range(4):
                    coeff = Poly.zero()
                    for sigma in range(4):
                        coeff = coeff + t_sigma[sigma].scale(self.c_inv[rho][sigma])
                    for (w, e), c in coeff.terms.items():
                        elem = elem + PhaseElem.x_gen(rho).kappa_shift(w).scale(c)
                table[(mu, nu)] = elem
                self._check_degree2_duality(mu, nu, elem)
        return table

    def _check_degree2_duality(self, mu: int, nu: int, elem: PhaseElem) -> None:
        """Quadratic duals must impose no further constraints on [x_mu, x_nu]."""
        for s in range(4):
            for t in range(s, 4):
                f = Poly.gen(s) * Poly.gen(t)
                d = coproduct_of(f, self.deltas)
                lhs = self.pair_tensor(d, mu, nu) - self.pair_tensor(d, nu, mu)
                # <g_s g_t, x_rho> vanishes, so the ansatz requires lhs = 0
                if not lhs.is_zero():
                    raise ValueError(
                        f"duality inconsistency for [x{mu}, x{nu}] against g{s} g{t}"
                    )

    def spacetime_commutator(self, mu: int, nu: int) -> PhaseElem:
        if mu == nu:
            return PhaseElem.zero()
        if mu < nu:
            return self.xx[(mu, nu)]
        return -self.xx[(nu, mu)]

    # -- momentum/position commutators ---------------------------------------

    def _commutator_with_x(self, f: Poly, nu: int) -> PhaseElem:
        d = coproduct_of(f, self.deltas)
        out = PhaseElem.zero()
        for (w, e1, e2), c in d.terms.items():
            pc = self._pair_single(e1, nu, w)
            if pc is None:
                continue
            second = Poly.monomial(1, e2)
            if self.twist:
                second = antipode_of(second, self.s_table)
            out = out + PhaseElem.from_momentum(second).kappa_shift(w).scale(c * pc)
        return out

    def momentum_position_commutator(self, f: Poly, nu: int) -> PhaseElem:
        """[f, x_nu] for any momentum polynomial f in the current basis."""
        return self._commutator_with_x(f, nu)

    # -- coregular action -----------------------------------------------------

    def coregular_action(self, f: Poly, xmono: Expv) -> PhaseElem:
        """f |> x^xmono = <f, x_(2)> x_(1) with primitive position coproducts."""
        deg = exp_degree(xmono)
        if deg > MAX_DEGREE:
            raise DegreeOverflow("position monomial beyond degree 2")
        counit = self.pairing(f, ZERO_EXP)
        if deg == 0:
            out = PhaseElem.zero()
            for (w, _), c in counit.terms.items():
                out = out + PhaseElem.const(c).kappa_shift(w)
            return out
        if deg == 1:
            nu = next(i for i in range(4) if xmono[i])
            out = _scalar_times(self.pairing(f, xmono), PhaseElem.const(1))
            out = out + _scalar_times(counit, PhaseElem.x_gen(nu))
            return out
        nus = [i for i in range(4) for _ in range(xmono[i])]
        nu1, nu2 = nus
        e1 = _unit_exp(nu1)
        e2 = _unit_exp(nu2)
        out = _scalar_times(counit, PhaseElem.x_monomial(xmono))
        out = out + _scalar_times(self.pairing(f, e2), PhaseElem.x_gen(nu1))
        out = out + _scalar_times(self.pairing(f, e1), PhaseElem.x_gen(nu2))
        out = out + _scalar_times(self.pairing(f, xmono), PhaseElem.const(1))
        return out

    # -- normal-ordered multiplication ---------------------------------------

    def mul(self, a: PhaseElem, b: PhaseElem) -> PhaseElem:
        out = PhaseElem.zero()
        for (w1, xe1, pe1), c1 in a.terms.items():
            for (w2, xe2, pe2), c2 in b.terms.items():
                w = w1 + w2
                if w > MAX_KAPPA:
                    continue
                toks = _tokens(xe1, pe1) + _tokens(xe2, pe2)
                out = out + self._normal_order(toks, w).scale(c1 * c2)
        return out

    def _normal_order(self, toks: List[Tuple[str, int]], w: int) -> PhaseElem:
        if w > MAX_KAPPA:
            return PhaseElem.zero()
        if len(toks) > MAX_DEGREE:
            return PhaseElem.zero()
        for pos in range(len(toks) - 1):
            (k1, i1), (k2, i2) = toks[pos], toks[pos + 1]
            swap = None
            if k1 == "p" and k2 == "x":
                swap = self.px[(i1, i2)]
            elif k1 == k2 == "x" and i1 > i2:
                swap = -self.spacetime_commutator(i2, i1)
            elif k1 == k2 == "p" and i1 > i2:
                swap = PhaseElem.zero()
            if swap is None:
                continue
            swapped = list(toks)
            swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
            result = self._normal_order(swapped, w)
            prefix, suffix = toks[:pos], toks[pos + 2 :]
            for (wc, xe, pe), c in swap.terms.items():
                spliced = list(prefix) + _tokens(xe, pe) + list(suffix)
                result = result + self._normal_order(spliced, w + wc).scale(c)
            return result
        xe, pe = _collect(toks)
        return PhaseElem({(w, xe, pe): as_qi(1)})


def _unit_exp(nu: int) -> Expv:
    e = [0, 0, 0, 0]
    e[nu] = 1
    return tuple(e)


def _scalar_times(scalar: Poly, elem: PhaseElem) -> PhaseElem:
    out = PhaseElem.zero()
    for (w, e), c in scalar.terms.items():
        if e != ZERO_EXP:
            raise ValueError("scalar expected")
        out = out + elem.kappa_shift(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# module-level operations (spec surface)
# ---------------------------------------------------------------------------


def pairing(
    f: Poly,
    xmono: Expv,
    model: Optional[CoproductModel] = None,
    bmap: Optional[BasisMap] = None,
    constants=DEFAULT_PAIRING,
) -> Poly:
    ps = PhaseSpace(model or classical_model(), bmap or identity_map(), constants)
    return ps.pairing(f, xmono)


def coregular_action(
    f: Poly,
    xmono: Expv,
    model: Optional[CoproductModel] = None,
    bmap: Optional[BasisMap] = None,
    constants=DEFAULT_PAIRING,
) -> PhaseElem:
    ps = PhaseSpace(model or classical_model(), bmap or identity_map(), constants)
    return ps.coregular_action(f, xmono)


def spacetime_commutators(
    model: CoproductModel, bmap: BasisMap, constants=DEFAULT_PAIRING
) -> Dict[Tuple[int, int], PhaseElem]:
    ps = PhaseSpace(model, bmap, constants)
    return dict(ps.xx)


def phase_space_commutators(
    model: CoproductModel, bmap: BasisMap, constants=DEFAULT_PAIRING, twist: bool = True
) -> Dict[Tuple[int, int], PhaseElem]:
    ps = PhaseSpace(model, bmap, constants, twist=twist)
    return dict(ps.px)


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def phase_elem_terms(elem: PhaseElem, p_names=None):
    from .poly import GEN_NAMES

    p_names = p_names or GEN_NAMES
    out = []
    for (w, xe, pe), c in sorted(elem.terms.items()):
        xm = monomial_str(xe, X_NAMES)
        pm = monomial_str(pe, p_names)
        mono = "*".join(m for m in (xm, pm) if m != "1") or "1"
        out.append(
            {
                "coeff_re_num": c.re.numerator,
                "coeff_re_den": c.re.denominator,
                "coeff_im_num": c.im.numerator,
                "coeff_im_den": c.im.denominator,
                "kappa_power": w,
                "monomial": mono,
            }
        )
    return out


def pairing_constants_json(constants=DEFAULT_PAIRING):
    return [
        [{"re_num": c.re.numerator, "re_den": c.re.denominator,
          "im_num": c.im.numerator, "im_den": c.im.denominator} for c in row]
        for row in constants
    ]
