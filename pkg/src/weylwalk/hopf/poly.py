"""Truncated commuting polynomials in the four translation generators.

A ``Poly`` is a finite sum of monomials ``c * (1/kappa)^w * g0^e0 g1^e1 g2^e2 g3^e3``
with ``c`` in Q[i], total degree ``e0+..+e3 <= 2`` and ``w <= 1``.  Arithmetic
silently truncates anything of higher degree or higher 1/kappa order, so the
algebra is closed and re-truncation is idempotent.

The generator symbols are abstract; depending on context they stand for the
classical translation generators or for the walk's (omega, k) basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .coeffs import QI, ZERO, as_qi

MAX_DEGREE = 2
MAX_KAPPA = 1

Expv = Tuple[int, int, int, int]
Key = Tuple[int, Expv]  # (kappa power, exponent vector)

ZERO_EXP: Expv = (0, 0, 0, 0)


class DegreeOverflow(ValueError):
    """Input exceeds the engine's degree / 1-over-kappa truncation."""


def _mul_exps(a: Expv, b: Expv) -> Expv:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def exp_degree(e: Expv) -> int:
    return e[0] + e[1] + e[2] + e[3]


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Key, QI] | None = None):
        cleaned: Dict[Key, QI] = {}
        if terms:
            for (w, e), c in terms.items():
                if c.is_zero() or w > MAX_KAPPA or exp_degree(e) > MAX_DEGREE:
                    continue
                cleaned[(w, e)] = c
        self.terms = cleaned

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def const(c) -> "Poly":
        return Poly({(0, ZERO_EXP): as_qi(c)})

    @staticmethod
    def gen(mu: int, kappa_power: int = 0) -> "Poly":
        e = [0, 0, 0, 0]
        e[mu] = 1
        return Poly({(kappa_power, tuple(e)): as_qi(1)})

    @staticmethod
    def monomial(coeff, exps: Expv, kappa_power: int = 0) -> "Poly":
        return Poly({(kappa_power, exps): as_qi(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: Dict[Key, QI] = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                w = w1 + w2
                if w > MAX_KAPPA:
                    continue
                e = _mul_exps(e1, e2)
                if exp_degree(e) > MAX_DEGREE:
                    continue
                key = (w, e)
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = as_qi(c)
        return Poly({k: v * c for k, v in self.terms.items()})

    def kappa_shift(self, n: int = 1) -> "Poly":
        """Multiply by (1/kappa)^n, truncating past the cap."""
        return Poly({(w + n, e): c for (w, e), c in self.terms.items() if w + n <= MAX_KAPPA})

    def drop_kappa(self) -> "Poly":
        """The kappa -> infinity limit: keep only 1/kappa^0 terms."""
        return Poly({k: c for k, c in self.terms.items() if k[0] == 0})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, exps: Expv, kappa_power: int = 0) -> QI:
        return self.terms.get((kappa_power, exps), ZERO)

    def constant_term(self) -> QI:
        """Counit value: the coefficient of the unit monomial at kappa^0."""
        return self.coeff(ZERO_EXP, 0)

    def max_degree(self) -> int:
        return max((exp_degree(e) for (_, e) in self.terms), default=0)

    def homogeneous(self, degree: int) -> "Poly":
        return Poly({(w, e): c for (w, e), c in self.terms.items() if exp_degree(e) == degree})

    def substitute(self, images: Iterable["Poly"]) -> "Poly":
        """Replace generator mu by images[mu]; truncates as usual."""
        images = list(images)
        out = Poly.zero()
        for (w, e), c in self.terms.items():
            piece = Poly.monomial(c, ZERO_EXP, w)
            for mu in range(4):
                for _ in range(e[mu]):
                    piece = piece * images[mu]
            out = out + piece
        return out

    def eval_complex(self, values, kappa: float) -> complex:
        """Numeric evaluation; values is a 4-sequence of numbers."""
        total = 0j
        for (w, e), c in self.terms.items():
            term = c.to_complex() * kappa ** (-w)
            for mu in range(4):
                term *= values[mu] ** e[mu]
            total += term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (w, e), c in sorted(self.terms.items()):
            mono = monomial_str(e, GEN_NAMES)
            kap = "" if w == 0 else "/kappa" if w == 1 else f"/kappa^{w}"
            if mono == "1":
                bits.append(f"{c}{kap}")
            else:
                bits.append(f"{c}*{mono}{kap}")
        return " + ".join(bits)

    __repr__ = __str__


GEN_NAMES = ("p0", "p1", "p2", "p3")


def monomial_str(e: Expv, names) -> str:
    parts = []
    for mu, power in enumerate(e):
        if power == 1:
            parts.append(names[mu])
        elif power > 1:
            parts.append(f"{names[mu]}^{power}")
    return "*".join(parts) if parts else "1"


def generators() -> Tuple[Poly, Poly, Poly, Poly]:
    return tuple(Poly.gen(mu) for mu in range(4))


def check_within_truncation(p: Poly) -> None:
    for (w, e) in p.terms:
        if w > MAX_KAPPA or exp_degree(e) > MAX_DEGREE:
            raise DegreeOverflow(f"term kappa^-{w} * {e} outside truncation")
