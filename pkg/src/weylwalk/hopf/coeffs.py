"""Exact complex-rational coefficients for the symbolic engine.

Everything downstream (polynomials, tensor series, commutator tables) is
built over Q[i]: pairs of ``fractions.Fraction`` for the real and imaginary
part.  No floating point enters the symbolic path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class QI:
    """A number a + b*i with a, b exact rationals."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other: "QI") -> "QI":
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self) -> "QI":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q[i]")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other: "QI") -> "QI":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


ZERO = QI(Fraction(0), Fraction(0))
ONE = QI(Fraction(1), Fraction(0))
I = QI(Fraction(0), Fraction(1))
MINUS_I = QI(Fraction(0), Fraction(-1))


def qi(re: Rat = 0, im: Rat = 0) -> QI:
    return QI(Fraction(re), Fraction(im))


def as_qi(value) -> QI:
    if isinstance(value, QI):
        return value
    if isinstance(value, (int, Fraction)):
        return QI(Fraction(value), Fraction(0))
    raise TypeError(f"cannot coerce {value!r} to Q[i]")
