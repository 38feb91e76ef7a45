"""Coproduct models and quadratic basis maps.

Two models are shipped:

* classical: the primitive coproduct D(g) = g (x) 1 + 1 (x) g on every
  translation generator.
* kappa: the bilinear 1/kappa deformation in the classical basis,
  D(g0) = prim + (1/kappa) sum_i g_i (x) g_i and
  D(g_i) = prim + (1/kappa) g_i (x) g0.
  These are the only terms that can contribute to degree-2 pairings, so the
  truncated engine is exact at this order.

A ``BasisMap`` is a nonlinear change of generators new = old + O(1/kappa)
with unit Jacobian at the origin; the engine transports coproducts and
antipodes through it symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .coeffs import QI, as_qi, qi
from .poly import Poly, ZERO_EXP, exp_degree
from .tensor import Tensor2


class InvalidMap(ValueError):
    """Basis map violates the unit-Jacobian-at-origin hypothesis."""


def _primitive(mu: int) -> Tensor2:
    g = Poly.gen(mu)
    one = Poly.const(1)
    return Tensor2.outer(g, one) + Tensor2.outer(one, g)


@dataclass(frozen=True)
class CoproductModel:
    name: str
    deltas: Tuple[Tensor2, Tensor2, Tensor2, Tensor2]

    def delta(self, mu: int) -> Tensor2:
        return self.deltas[mu]


def classical_model() -> CoproductModel:
    return CoproductModel("classical", tuple(_primitive(mu) for mu in range(4)))


def kappa_model() -> CoproductModel:
    deltas = []
    d0 = _primitive(0)
    for i in (1, 2, 3):
        gi = Poly.gen(i)
        d0 = d0 + Tensor2.outer(gi, gi).kappa_shift(1)
    deltas.append(d0)
    g0 = Poly.gen(0)
    for i in (1, 2, 3):
        gi = Poly.gen(i)
        deltas.append(_primitive(i) + Tensor2.outer(gi, g0).kappa_shift(1))
    return CoproductModel("kappa", tuple(deltas))


def get_model(name: str) -> CoproductModel:
    if name == "classical":
        return classical_model()
    if name == "kappa":
        return kappa_model()
    raise ValueError(f"unknown coproduct model {name!r}")


def coproduct_of(p: Poly, deltas: Sequence[Tensor2]) -> Tensor2:
    """Extend the generator coproducts to a polynomial as an algebra map."""
    out = Tensor2.zero()
    for (w, e), c in p.terms.items():
        piece = Tensor2.unit()
        for mu in range(4):
            for _ in range(e[mu]):
                piece = piece * deltas[mu]
        out = out + piece.kappa_shift(w).scale(c)
    return out


# ---------------------------------------------------------------------------
# basis maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisMap:
    """new_from_old[mu] expresses the new generator mu in the old basis;
    old_from_new is its order-1/kappa inverse."""

    new_from_old: Tuple[Poly, Poly, Poly, Poly]
    old_from_new: Tuple[Poly, Poly, Poly, Poly]

    def __post_init__(self):
        for mu, p in enumerate(self.new_from_old):
            _check_unit_jacobian(p, mu)

    def compose_is_identity(self) -> bool:
        gens = [Poly.gen(mu) for mu in range(4)]
        for mu in range(4):
            round_trip = self.new_from_old[mu].substitute(self.old_from_new)
            if round_trip != gens[mu]:
                return False
            back = self.old_from_new[mu].substitute(self.new_from_old)
            if back != gens[mu]:
                return False
        return True


def _check_unit_jacobian(p: Poly, mu: int) -> None:
    if not p.coeff(ZERO_EXP, 0).is_zero():
        raise InvalidMap(f"component {mu} has a constant term")
    linear = {(w, e): c for (w, e), c in p.terms.items() if exp_degree(e) == 1 and w == 0}
    expected = [0, 0, 0, 0]
    expected[mu] = 1
    if linear != {(0, tuple(expected)): as_qi(1)}:
        raise InvalidMap(f"component {mu} does not have unit Jacobian at the origin")


def invert_quadratic(new_from_old: Sequence[Poly]) -> Tuple[Poly, ...]:
    """Order-by-order inverse of new = old + (corrections): to first order in
    1/kappa (and degree 2) the inverse is old = new - corrections(new)."""
    gens = [Poly.gen(mu) for mu in range(4)]
    out = []
    for mu in range(4):
        correction = new_from_old[mu] - gens[mu]
        out.append(gens[mu] - correction)
    return tuple(out)


def make_basis_map(new_from_old: Sequence[Poly]) -> BasisMap:
    bmap = BasisMap(tuple(new_from_old), invert_quadratic(new_from_old))
    if not bmap.compose_is_identity():
        raise InvalidMap("map does not invert to identity at truncation order")
    return bmap


def identity_map() -> BasisMap:
    gens = tuple(Poly.gen(mu) for mu in range(4))
    return BasisMap(gens, gens)


def walk_basis_map() -> BasisMap:
    """The walk's (omega, k) generators expressed in the flat basis.

    Forward relation (flat from walk):
        E  = omega
        p1 = k1 + k2 k3 / kappa
        p2 = k2 - k1 k3 / kappa
        p3 = k3 + k1 k2 / kappa
    and the order-1/kappa inverse with the signs flipped.  The quadratic
    coefficients are the degree-2 expansion of the walk's n(k) in rescaled
    coordinates; the cyclic minus sign sits on the second component.
    """
    k1, k2, k3 = Poly.gen(1), Poly.gen(2), Poly.gen(3)
    new_from_old = (
        Poly.gen(0),
        k1 - (k2 * k3).kappa_shift(1),
        k2 + (k1 * k3).kappa_shift(1),
        k3 - (k1 * k2).kappa_shift(1),
    )
    return make_basis_map(new_from_old)


def walk_forward_map() -> Tuple[Poly, ...]:
    """Flat generators as polynomials in the walk basis (the forward columns)."""
    return walk_basis_map().old_from_new


def random_quadratic_map(rng) -> BasisMap:
    """Random J(0)=I map: new_mu = old_mu + (1/kappa) sum m^mu_ab old_a old_b,
    rational m in [-3, 3] (eighths)."""
    gens = [Poly.gen(mu) for mu in range(4)]
    new = []
    for mu in range(4):
        p = gens[mu]
        for a in range(4):
            for b in range(a, 4):
                m = Fraction(int(rng.integers(-24, 25)), 8)
                if m == 0:
                    continue
                p = p + (gens[a] * gens[b]).kappa_shift(1).scale(m)
        new.append(p)
    return make_basis_map(new)


def map_coefficients(bmap: BasisMap):
    """JSON-friendly description of a basis map."""
    from .poly import GEN_NAMES, monomial_str

    def poly_terms(p: Poly):
        out = []
        for (w, e), c in sorted(p.terms.items()):
            out.append(
                {
                    "coeff_re_num": c.re.numerator,
                    "coeff_re_den": c.re.denominator,
                    "coeff_im_num": c.im.numerator,
                    "coeff_im_den": c.im.denominator,
                    "kappa_power": w,
                    "monomial": monomial_str(e, GEN_NAMES),
                }
            )
        return out

    return {
        "new_from_old": [poly_terms(p) for p in bmap.new_from_old],
        "old_from_new": [poly_terms(p) for p in bmap.old_from_new],
    }


# ---------------------------------------------------------------------------
# transport through a basis map
# ---------------------------------------------------------------------------


def transported_coproducts(model: CoproductModel, bmap: BasisMap) -> Tuple[Tensor2, ...]:
    """Coproducts of the new generators, written in the new basis.

    Delta(new_mu) = Delta(new_from_old_mu) evaluated with the model coproducts,
    then both tensor slots rewritten via old = old_from_new(new).
    """
    out = []
    for mu in range(4):
        d = coproduct_of(bmap.new_from_old[mu], model.deltas)
        out.append(d.substitute_slots(bmap.old_from_new))
    return tuple(out)


def antipode_table(deltas: Sequence[Tensor2]) -> Tuple[Poly, ...]:
    """Antipode on the generators, solved from m(S (x) id) Delta = 0.

    Writing Delta g = g (x) 1 + 1 (x) g + sum c_t (a_t (x) b_t) the axiom gives
    S(g) = -g - sum c_t S(a_t) b_t.  The corrections a_t (x) b_t all sit at
    order 1/kappa after transport, so S(a_t) = (-1)^deg(a_t) a_t there.
    """
    out = []
    for mu in range(4):
        g = Poly.gen(mu)
        correction = Poly.zero()
        remainder = deltas[mu] - Tensor2.outer(g, Poly.const(1)) - Tensor2.outer(Poly.const(1), g)
        for (w, e1, e2), c in remainder.terms.items():
            sign = -1 if exp_degree(e1) % 2 == 0 else 1
            prod = (Poly.monomial(sign, e1) * Poly.monomial(1, e2)).kappa_shift(w).scale(c)
            correction = correction + prod
        out.append(-g + correction)
    return tuple(out)


def antipode_of(p: Poly, s_table: Sequence[Poly]) -> Poly:
    """Extend the generator antipode multiplicatively (momenta commute)."""
    return p.substitute(s_table)
