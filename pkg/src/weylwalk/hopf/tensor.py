"""Two-slot tensor series over the truncated momentum polynomials.

Represents coproduct values: finite sums ``c * (1/kappa)^w * (m1 (x) m2)``
where m1, m2 are commuting momentum monomials.  Slot entries keep degree <= 2
each and the total 1/kappa order stays <= 1; slotwise multiplication is the
tensor-algebra product (a (x) b)(c (x) d) = ac (x) bd.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .coeffs import QI, ZERO
from .poly import MAX_DEGREE, MAX_KAPPA, ZERO_EXP, Expv, Poly, exp_degree, _mul_exps

TKey = Tuple[int, Expv, Expv]  # (kappa power, slot-1 exponents, slot-2 exponents)


class Tensor2:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[TKey, QI] | None = None):
        cleaned: Dict[TKey, QI] = {}
        if terms:
            for (w, e1, e2), c in terms.items():
                if c.is_zero() or w > MAX_KAPPA:
                    continue
                if exp_degree(e1) > MAX_DEGREE or exp_degree(e2) > MAX_DEGREE:
                    continue
                cleaned[(w, e1, e2)] = c
        self.terms = cleaned

    @staticmethod
    def zero() -> "Tensor2":
        return Tensor2()

    @staticmethod
    def unit() -> "Tensor2":
        from .coeffs import ONE

        return Tensor2({(0, ZERO_EXP, ZERO_EXP): ONE})

    @staticmethod
    def outer(a: Poly, b: Poly) -> "Tensor2":
        out: Dict[TKey, QI] = {}
        for (w1, e1), c1 in a.terms.items():
            for (w2, e2), c2 in b.terms.items():
                if w1 + w2 > MAX_KAPPA:
                    continue
                key = (w1 + w2, e1, e2)
                s = out.get(key, ZERO) + c1 * c2
                if not s.is_zero():
                    out[key] = s
                else:
                    out.pop(key, None)
        return Tensor2(out)

    def __add__(self, other: "Tensor2") -> "Tensor2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Tensor2(out)

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        return self + (-other)

    def __neg__(self) -> "Tensor2":
        return Tensor2({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "Tensor2") -> "Tensor2":
        out: Dict[TKey, QI] = {}
        for (w1, a1, b1), c1 in self.terms.items():
            for (w2, a2, b2), c2 in other.terms.items():
                w = w1 + w2
                if w > MAX_KAPPA:
                    continue
                a = _mul_exps(a1, a2)
                b = _mul_exps(b1, b2)
                if exp_degree(a) > MAX_DEGREE or exp_degree(b) > MAX_DEGREE:
                    continue
                key = (w, a, b)
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Tensor2(out)

    def scale(self, c: QI) -> "Tensor2":
        return Tensor2({k: v * c for k, v in self.terms.items()})

    def kappa_shift(self, n: int = 1) -> "Tensor2":
        return Tensor2(
            {(w + n, e1, e2): c for (w, e1, e2), c in self.terms.items() if w + n <= MAX_KAPPA}
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- coalgebra helpers ---------------------------------------------------

    def counit_left(self) -> Poly:
        """(eps (x) id) applied to the series (eps kills all generators)."""
        out: Dict = {}
        for (w, e1, e2), c in self.terms.items():
            if e1 != ZERO_EXP:
                continue
            key = (w, e2)
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(out)

    def counit_right(self) -> Poly:
        out: Dict = {}
        for (w, e1, e2), c in self.terms.items():
            if e2 != ZERO_EXP:
                continue
            key = (w, e1)
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(out)

    def swap(self) -> "Tensor2":
        """Exchange the two slots (the opposite coproduct)."""
        out: Dict[TKey, QI] = {}
        for (w, e1, e2), c in self.terms.items():
            key = (w, e2, e1)
            s = out.get(key, ZERO) + c
            if not s.is_zero():
                out[key] = s
        return Tensor2(out)

    def bilinear_part(self) -> "Tensor2":
        """Terms with degree exactly 1 in each slot."""
        return Tensor2(
            {
                (w, e1, e2): c
                for (w, e1, e2), c in self.terms.items()
                if exp_degree(e1) == 1 and exp_degree(e2) == 1
            }
        )

    def substitute_slots(self, images: Iterable[Poly]) -> "Tensor2":
        """Rewrite both slots through generator images (basis change)."""
        images = list(images)
        out = Tensor2.zero()
        for (w, e1, e2), c in self.terms.items():
            a = Poly.monomial(1, e1).substitute(images)
            b = Poly.monomial(1, e2).substitute(images)
            out = out + Tensor2.outer(a, b).kappa_shift(w).scale(c)
        return out

    def terms_list(self):
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        from .poly import GEN_NAMES, monomial_str

        bits = []
        for (w, e1, e2), c in sorted(self.terms.items()):
            kap = "" if w == 0 else "/kappa"
            bits.append(f"{c}*({monomial_str(e1, GEN_NAMES)} (x) {monomial_str(e2, GEN_NAMES)}){kap}")
        return " + ".join(bits)

    __repr__ = __str__
