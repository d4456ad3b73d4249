"""Exact arithmetic in the quadratic field Q(sqrt 5)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .rigor import RigorousReal, eval_constant


@dataclass(frozen=True, eq=False)
class QSqrt5:
    """The number ``a + b*sqrt(5)`` with rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def sqrt5(cls) -> "QSqrt5":
        return cls(0, 1)

    @classmethod
    def alpha(cls) -> "QSqrt5":
        return cls(Fraction(1, 2), Fraction(1, 2))

    @classmethod
    def beta(cls) -> "QSqrt5":
        return cls(Fraction(1, 2), Fraction(-1, 2))

    def conjugate(self) -> "QSqrt5":
        return QSqrt5(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QSqrt5, int, Fraction)):
            return NotImplemented
        other = _lift(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __add__(self, other: Union["QSqrt5", int, Fraction]) -> "QSqrt5":
        other = _lift(other)
        return QSqrt5(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QSqrt5":
        return QSqrt5(-self.a, -self.b)

    def __sub__(self, other) -> "QSqrt5":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "QSqrt5":
        return _lift(other) - self

    def __mul__(self, other) -> "QSqrt5":
        other = _lift(other)
        return QSqrt5(self.a * other.a + 5 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt5":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in Q(sqrt 5)")
        return QSqrt5(self.a / n, -self.b / n)

    def __truediv__(self, other) -> "QSqrt5":
        return self * _lift(other).inverse()

    def __rtruediv__(self, other) -> "QSqrt5":
        return _lift(other) * self.inverse()

    def __pow__(self, k: int) -> "QSqrt5":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QSqrt5(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def enclose(self, precision_bits: int) -> RigorousReal:
        return self.a + self.b * eval_constant("sqrt5", precision_bits)


def _lift(x) -> QSqrt5:
    if isinstance(x, QSqrt5):
        return x
    return QSqrt5(Fraction(x), 0)
