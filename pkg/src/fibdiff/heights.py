"""Absolute logarithmic heights of the algebraic numbers in both linear forms."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UnsupportedError
from .rigor import DEFAULT_PRECISION, Constant, RigorousReal, eval_constant, log, rmax


class Form(str, enum.Enum):
    RATIONAL = "rational"
    NAMED = "named"
    GAMMA3 = "gamma3"


# minimal polynomial data for the algebraic named constants: (leading coefficient, degree)
_ALGEBRAIC = {
    Constant.ALPHA: (1, 2),
    Constant.BETA: (1, 2),
    Constant.SQRT5: (1, 2),
}


@dataclass(frozen=True)
class AlgebraicDescriptor:
    """One of the numbers 2, alpha, sqrt(5) or sqrt(5)(1 - alpha^-s)^-1.

    Build instances through :func:`rational`, :func:`named` and :func:`gamma3`.
    """

    form: Form
    p: int = 0
    q: int = 1
    tag: Optional[Constant] = None
    shift: int = 0

    @property
    def degree(self) -> int:
        return 1 if self.form is Form.RATIONAL else 2

    def value(self, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
        if self.form is Form.RATIONAL:
            return RigorousReal.exact(Fraction(self.p, self.q), precision_bits)
        if self.form is Form.NAMED:
            return eval_constant(self.tag, precision_bits)
        alpha = eval_constant(Constant.ALPHA, precision_bits)
        return eval_constant(Constant.SQRT5, precision_bits) / (1 - alpha ** (-self.shift))

    def conjugates(self, precision_bits: int = DEFAULT_PRECISION) -> list[RigorousReal]:
        if self.form is Form.RATIONAL:
            return [self.value(precision_bits)]
        if self.form is Form.NAMED:
            if self.tag in (Constant.ALPHA, Constant.BETA):
                return [eval_constant(Constant.ALPHA, precision_bits), eval_constant(Constant.BETA, precision_bits)]
            root = eval_constant(Constant.SQRT5, precision_bits)
            return [root, -root]
        raise UnsupportedError("conjugates of gamma3 are not tracked")

    def leading_coefficient(self) -> int:
        if self.form is Form.RATIONAL:
            return self.q
        if self.form is Form.NAMED:
            return _ALGEBRAIC[self.tag][0]
        raise UnsupportedError("gamma3 has no stored minimal polynomial")

    def __str__(self) -> str:
        if self.form is Form.RATIONAL:
            return str(Fraction(self.p, self.q))
        if self.form is Form.NAMED:
            return self.tag.value
        return f"sqrt5/(1-alpha^-{self.shift})"


def rational(p: int, q: int = 1) -> AlgebraicDescriptor:
    if q < 1:
        raise ValueError("denominator must be positive")
    g = math.gcd(p, q)
    return AlgebraicDescriptor(Form.RATIONAL, p=p // g, q=q // g)


def named(tag) -> AlgebraicDescriptor:
    tag = Constant(tag)
    if tag not in _ALGEBRAIC:
        raise UnsupportedError(f"{tag.value} is not an algebraic number")
    return AlgebraicDescriptor(Form.NAMED, tag=tag)


def gamma3(shift: int) -> AlgebraicDescriptor:
    if shift < 1:
        raise ValueError("shift must be positive")
    return AlgebraicDescriptor(Form.GAMMA3, shift=shift)


def height(d: AlgebraicDescriptor, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """h(eta) = (log a0 + sum log max(|conjugate|, 1)) / degree."""
    if d.form is Form.GAMMA3:
        raise UnsupportedError("gamma3 only has an upper bound; use height_bound_gamma3")
    total = log(RigorousReal.exact(d.leading_coefficient(), precision_bits))
    for c in d.conjugates(precision_bits):
        total = total + log(rmax(abs(c), 1))
    return total / d.degree


class Rule(str, enum.Enum):
    SUM = "sum"
    PRODUCT = "product"
    POWER = "power"


def height_bound_combine(rule, *hs: RigorousReal, s: Optional[int] = None) -> RigorousReal:
    """Upper bound for the height of a sum/difference, product/quotient or power.

    sum: h1 + h2 + log 2; product: h1 + h2; power: |s| h.
    """
    rule = Rule(rule)
    if rule is Rule.POWER:
        if s is None or len(hs) != 1:
            raise ValueError("power rule takes one height and an exponent s")
        return abs(s) * hs[0]
    if len(hs) != 2:
        raise ValueError(f"{rule.value} rule takes two heights")
    total = hs[0] + hs[1]
    if rule is Rule.SUM:
        total = total + eval_constant(Constant.LOG2, total.precision_bits)
    return total


def height_bound_gamma3(shift: int, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """log(2 sqrt 5) + shift * log(alpha) / 2, an upper bound on h(sqrt5 (1 - alpha^-shift)^-1).

    The chain: h(alpha^-s) <= s h(alpha); h(1 - alpha^-s) <= h(1) + s h(alpha) + log 2;
    the inverse keeps the height and multiplying by sqrt 5 adds log sqrt 5.
    """
    if shift < 1:
        raise ValueError("shift must be positive")
    h_alpha = height(named(Constant.ALPHA), precision_bits)
    h_power = height_bound_combine(Rule.POWER, h_alpha, s=-shift)
    h_diff = height_bound_combine(Rule.SUM, RigorousReal.exact(0, precision_bits), h_power)
    return height_bound_combine(Rule.PRODUCT, height(named(Constant.SQRT5), precision_bits), h_diff)
