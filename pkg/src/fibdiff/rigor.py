"""Midpoint-radius enclosures over exact rationals.

Every value is a pair (midpoint, radius) of :class:`fractions.Fraction` such
that the true real number lies in ``[midpoint - radius, midpoint + radius]``.
Inexact results are rounded outward to dyadic rationals carrying roughly
``precision_bits`` significant bits, which keeps denominators bounded while
preserving soundness.  Elementary functions (log, exp, sqrt) are evaluated in
fixed-point integer arithmetic with directed rounding: the lower endpoint is
built from floor-rounded partial results and the upper one from ceiling-rounded
partial results plus an explicit series tail bound.
"""

from __future__ import annotations

import decimal
import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import DomainError, PrecisionError, UndecidableError

DEFAULT_PRECISION = 256
MAX_PRECISION = 16384

# extra bits carried by the fixed-point kernels beyond the requested precision
_GUARD = 32
# extra significant bits kept when rounding endpoints outward
_ROUND_SLACK = 8
# |x| above this makes exp(x) absurdly large for the proof's needs
_EXP_LIMIT = 1 << 16

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dyadic helpers
# ---------------------------------------------------------------------------

def _floor_log2(x: Fraction) -> int:
    """Largest k with 2**k <= x, for x > 0."""
    n, d = x.numerator, x.denominator
    k = n.bit_length() - d.bit_length()
    if k >= 0:
        if n < (d << k):
            k -= 1
    elif (n << -k) < d:
        k -= 1
    return k


def _round(x: Fraction, bits: int, up: bool) -> Fraction:
    """Round x to a dyadic with about ``bits`` significant bits, toward +inf if ``up``."""
    if x == 0:
        return x
    s = bits - _floor_log2(abs(x))
    n, d = x.numerator, x.denominator
    if s >= 0:
        num = n << s
        q = -((-num) // d) if up else num // d
        return Fraction(q, 1 << s)
    den = d << -s
    q = -((-n) // den) if up else n // den
    return Fraction(q << -s)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# ---------------------------------------------------------------------------
# fixed-point kernels; all return integer bounds scaled by 2**w
# ---------------------------------------------------------------------------

def _atanh_bounds(zn: int, zd: int, w: int) -> tuple[int, int]:
    """Bounds on atanh(zn/zd) * 2**w for 0 <= zn/zd <= 1/2."""
    one = 1 << w
    # lower chain: every partial result floored
    z = (zn << w) // zd
    z2 = (z * z) >> w
    p, j, lo = z, 0, 0
    while p:
        lo += p // (2 * j + 1)
        p = (p * z2) >> w
        j += 1
    # upper chain: every partial result ceiled, then the geometric tail
    z = _ceil_div(zn << w, zd)
    if z == 0:
        return lo, 0
    z2 = _ceil_div(z * z, one)
    p, j, hi = z, 0, 0
    while p > 1:
        hi += _ceil_div(p, 2 * j + 1)
        p = _ceil_div(p * z2, one)
        j += 1
    # tail <= z^(2j+1) / (1 - z^2) <= (4/3) p for z <= 1/2
    hi += 2 * p
    return lo, hi


def _log_reduced(yn: int, yd: int, w: int) -> tuple[int, int]:
    """Bounds on log(yn/yd) * 2**w for 1 <= yn/yd <= 2.

    The argument is first pulled toward 1 by r successive square roots, so
    log y = 2**r * 2 atanh((t-1)/(t+1)) with t = y**(2**-r) and a tiny series
    argument.  Floors along the lower chain and ceilings along the upper chain
    keep both results one-sided.
    """
    r = max(4, math.isqrt(w) // 2)
    width = w + r + 8
    one = 1 << width
    lo_t = (yn << width) // yd
    hi_t = _ceil_div(yn << width, yd)
    for _ in range(r):
        lo_t = math.isqrt(lo_t << width)
        root = math.isqrt(hi_t << width)
        hi_t = root if root * root == hi_t << width else root + 1
    lo, _ = _atanh_bounds(lo_t - one, lo_t + one, width)
    _, hi = _atanh_bounds(hi_t - one, hi_t + one, width)
    shift = width - w - r - 1
    return lo >> shift, _ceil_div(hi, 1 << shift)


@functools.lru_cache(maxsize=64)
def _log2_bounds(w: int) -> tuple[int, int]:
    return _log_reduced(2, 1, w)


def _log_fixed(x: Fraction, w: int) -> tuple[int, int]:
    """Bounds on log(x) * 2**w for a positive rational x."""
    k = _floor_log2(x)
    n, d = x.numerator, x.denominator
    if k >= 0:
        yn, yd = n, d << k
    else:
        yn, yd = n << -k, d
    lo_y, hi_y = _log_reduced(yn, yd, w)
    if k == 0:
        return lo_y, hi_y
    l2_lo, l2_hi = _log2_bounds(w)
    if k > 0:
        return k * l2_lo + lo_y, k * l2_hi + hi_y
    return k * l2_hi + lo_y, k * l2_lo + hi_y


def _exp_bound(x: Fraction, w: int, up: bool) -> Fraction:
    """A lower (``up=False``) or upper bound for exp(x) with about w bits of relative accuracy."""
    if x < 0:
        return 1 / _exp_bound(-x, w, not up)
    if x == 0:
        return Fraction(1)
    s = max(0, _floor_log2(x) + 2)
    width = w + s + 16
    one = 1 << width
    r = x / (1 << s)  # r < 1/2
    if up:
        rr = _ceil_div(r.numerator << width, r.denominator)
        term, total, j = one, one, 1
        while term > 1 or j <= 2:
            term = _ceil_div(term * rr, j << width)
            total += term
            j += 1
        # remaining terms form a series with ratio <= 1/4
        total += term + 1
        for _ in range(s):
            total = _ceil_div(total * total, one)
    else:
        rr = (r.numerator << width) // r.denominator
        term, total, j = one, one, 1
        while term:
            term = (term * rr) // (j << width)
            total += term
            j += 1
        for _ in range(s):
            total = (total * total) >> width
    return Fraction(total, one)


def _sqrt_bound(x: Fraction, w: int, up: bool) -> Fraction:
    scaled = x * (1 << (2 * w))
    if up:
        r = math.isqrt(math.ceil(scaled))
        if r * r != scaled:
            r += 1
    else:
        r = math.isqrt(math.floor(scaled))
    return Fraction(r, 1 << w)


# ---------------------------------------------------------------------------
# the enclosure type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RigorousReal:
    """An enclosure ``midpoint ± radius`` of a real number."""

    midpoint: Fraction
    radius: Fraction = Fraction(0)
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        object.__setattr__(self, "midpoint", Fraction(self.midpoint))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.precision_bits <= 0:
            raise ValueError("precision_bits must be positive")

    # -- construction ------------------------------------------------------

    @classmethod
    def exact(cls, value: Number, precision_bits: int = DEFAULT_PRECISION) -> "RigorousReal":
        return cls(Fraction(value), Fraction(0), precision_bits)

    @classmethod
    def from_bounds(cls, lower: Number, upper: Number,
                    precision_bits: int = DEFAULT_PRECISION,
                    round_outward: bool = True) -> "RigorousReal":
        lower, upper = Fraction(lower), Fraction(upper)
        if lower > upper:
            raise ValueError(f"empty enclosure [{lower}, {upper}]")
        if round_outward:
            bits = precision_bits + _ROUND_SLACK
            lower = _round(lower, bits, up=False)
            upper = _round(upper, bits, up=True)
        return cls((lower + upper) / 2, (upper - lower) / 2, precision_bits)

    # -- inspection --------------------------------------------------------

    @property
    def lower(self) -> Fraction:
        return self.midpoint - self.radius

    @property
    def upper(self) -> Fraction:
        return self.midpoint + self.radius

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def contains(self, value: Union[Number, "RigorousReal"]) -> bool:
        if isinstance(value, RigorousReal):
            return self.lower <= value.lower and value.upper <= self.upper
        return self.lower <= Fraction(value) <= self.upper

    def overlaps(self, other: "RigorousReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def is_positive(self) -> bool:
        """True when the whole enclosure lies strictly above 0."""
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    def with_precision(self, precision_bits: int) -> "RigorousReal":
        return RigorousReal(self.midpoint, self.radius, precision_bits)

    def to_decimal(self, digits: int = 30) -> str:
        return fraction_to_decimal(self.midpoint, digits)

    def __float__(self) -> float:
        return float(self.midpoint)

    def __str__(self) -> str:
        if self.is_exact:
            return self.to_decimal(20)
        return f"{self.to_decimal(20)} ± {float(self.radius):.3g}"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return RigorousReal(-self.midpoint, self.radius, self.precision_bits)

    def __abs__(self):
        lo, hi = self.lower, self.upper
        if lo >= 0:
            return self
        if hi <= 0:
            return -self
        return RigorousReal.from_bounds(0, max(-lo, hi), self.precision_bits, round_outward=False)

    def __pow__(self, k: int):
        return pow_int(self, k)


def fraction_to_decimal(x: Fraction, digits: int = 30) -> str:
    """Render a rational with ``digits`` significant digits."""
    ctx = decimal.Context(prec=digits)
    value = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return format(value, "g") if abs(value) >= 1e-6 or value == 0 else format(value, "e")


def _coerce(x, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    if isinstance(x, RigorousReal):
        return x
    if isinstance(x, (int, Fraction)):
        return RigorousReal.exact(x, precision_bits)
    raise TypeError(f"cannot enclose {type(x).__name__}")


def _working_precision(*args: RigorousReal) -> int:
    inexact = [a.precision_bits for a in args if not a.is_exact]
    if inexact:
        return min(inexact)
    return max(a.precision_bits for a in args)


def _pair(x, y) -> tuple[RigorousReal, RigorousReal, int]:
    if isinstance(x, RigorousReal) and not isinstance(y, RigorousReal):
        y = _coerce(y, x.precision_bits)
    elif isinstance(y, RigorousReal) and not isinstance(x, RigorousReal):
        x = _coerce(x, y.precision_bits)
    else:
        x, y = _coerce(x), _coerce(y)
    return x, y, _working_precision(x, y)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def add(x, y) -> RigorousReal:
    x, y, p = _pair(x, y)
    if x.is_exact and y.is_exact:
        return RigorousReal.exact(x.midpoint + y.midpoint, p)
    return RigorousReal.from_bounds(x.lower + y.lower, x.upper + y.upper, p)


def sub(x, y) -> RigorousReal:
    x, y, p = _pair(x, y)
    if x.is_exact and y.is_exact:
        return RigorousReal.exact(x.midpoint - y.midpoint, p)
    return RigorousReal.from_bounds(x.lower - y.upper, x.upper - y.lower, p)


def mul(x, y) -> RigorousReal:
    x, y, p = _pair(x, y)
    if x.is_exact and y.is_exact:
        return RigorousReal.exact(x.midpoint * y.midpoint, p)
    products = [a * b for a in (x.lower, x.upper) for b in (y.lower, y.upper)]
    return RigorousReal.from_bounds(min(products), max(products), p)


def div(x, y) -> RigorousReal:
    x, y, p = _pair(x, y)
    if y.lower <= 0 <= y.upper:
        raise DomainError(f"divisor enclosure [{float(y.lower):.3g}, {float(y.upper):.3g}] contains 0")
    if x.is_exact and y.is_exact:
        return RigorousReal.exact(x.midpoint / y.midpoint, p)
    quotients = [a / b for a in (x.lower, x.upper) for b in (y.lower, y.upper)]
    return RigorousReal.from_bounds(min(quotients), max(quotients), p)


def _pow_nonneg(a: Fraction, k: int, bits: int, up: bool) -> Fraction:
    result, base = Fraction(1), a
    while k:
        if k & 1:
            result = _round(result * base, bits, up)
        k >>= 1
        if k:
            base = _round(base * base, bits, up)
    return result


def pow_int(x, k: int) -> RigorousReal:
    x = _coerce(x)
    p = x.precision_bits
    if k == 0:
        return RigorousReal.exact(1, p)
    if k < 0:
        return div(RigorousReal.exact(1, p), pow_int(x, -k))
    if x.is_exact:
        return RigorousReal.exact(x.midpoint ** k, p)
    bits = p + _ROUND_SLACK + k.bit_length() + 8
    lo, hi = x.lower, x.upper
    if lo >= 0:
        return RigorousReal.from_bounds(_pow_nonneg(lo, k, bits, False), _pow_nonneg(hi, k, bits, True), p)
    if hi <= 0:
        a, b = _pow_nonneg(-hi, k, bits, False), _pow_nonneg(-lo, k, bits, True)
        if k % 2 == 0:
            return RigorousReal.from_bounds(a, b, p)
        return RigorousReal.from_bounds(-b, -a, p)
    top = _pow_nonneg(max(-lo, hi), k, bits, True)
    if k % 2 == 0:
        return RigorousReal.from_bounds(0, top, p)
    return RigorousReal.from_bounds(-_pow_nonneg(-lo, k, bits, True), _pow_nonneg(hi, k, bits, True), p)


def log(x) -> RigorousReal:
    x = _coerce(x)
    if x.lower <= 0:
        raise DomainError(f"log of enclosure with lower endpoint {float(x.lower):.3g} <= 0")
    p = x.precision_bits
    if x.is_exact and x.midpoint == 1:
        return RigorousReal.exact(0, p)
    w = p + _GUARD
    lo, _ = _log_fixed(x.lower, w)
    _, hi = _log_fixed(x.upper, w)
    scale = 1 << w
    return RigorousReal.from_bounds(Fraction(lo, scale), Fraction(hi, scale), p)


def exp(x) -> RigorousReal:
    x = _coerce(x)
    p = x.precision_bits
    if max(abs(x.lower), abs(x.upper)) > _EXP_LIMIT:
        raise DomainError("exp argument out of supported range")
    if x.is_exact and x.midpoint == 0:
        return RigorousReal.exact(1, p)
    w = p + _GUARD
    return RigorousReal.from_bounds(_exp_bound(x.lower, w, False), _exp_bound(x.upper, w, True), p)


def sqrt(x) -> RigorousReal:
    x = _coerce(x)
    if x.lower < 0:
        raise DomainError("sqrt of enclosure reaching below 0")
    p = x.precision_bits
    if x.is_exact:
        m = x.midpoint
        rn, rd = math.isqrt(m.numerator), math.isqrt(m.denominator)
        if rn * rn == m.numerator and rd * rd == m.denominator:
            return RigorousReal.exact(Fraction(rn, rd), p)
    w = p + _GUARD
    if x.lower > 0:
        w += max(0, -_floor_log2(x.lower))
    return RigorousReal.from_bounds(_sqrt_bound(x.lower, w, False), _sqrt_bound(x.upper, w, True), p)


def rmax(x, y) -> RigorousReal:
    """Enclosure of max(x, y)."""
    x, y, p = _pair(x, y)
    lo, hi = max(x.lower, y.lower), max(x.upper, y.upper)
    if lo == hi:
        return RigorousReal.exact(lo, p)
    return RigorousReal.from_bounds(lo, hi, p, round_outward=False)


_OPS: dict[str, Callable[..., RigorousReal]] = {
    "add": add,
    "sub": sub,
    "mul": mul,
    "div": div,
    "pow_int": pow_int,
    "log": log,
    "exp": exp,
    "sqrt": sqrt,
}


def arith(op: str, *args) -> RigorousReal:
    """Dispatch ``op`` (one of add, sub, mul, div, pow_int, log, exp, sqrt) over enclosures."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(*args)


# ---------------------------------------------------------------------------
# named constants
# ---------------------------------------------------------------------------

class Constant(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    SQRT5 = "sqrt5"
    LOG2 = "log2"
    LOG_ALPHA = "log_alpha"
    LOG_SQRT5 = "log_sqrt5"


@functools.lru_cache(maxsize=256)
def _constant(tag: Constant, p: int) -> RigorousReal:
    if tag is Constant.SQRT5:
        return sqrt(RigorousReal.exact(5, p))
    if tag is Constant.ALPHA:
        return (1 + _constant(Constant.SQRT5, p)) / 2
    if tag is Constant.BETA:
        return (1 - _constant(Constant.SQRT5, p)) / 2
    if tag is Constant.LOG2:
        return log(RigorousReal.exact(2, p))
    if tag is Constant.LOG_ALPHA:
        return log(_constant(Constant.ALPHA, p))
    if tag is Constant.LOG_SQRT5:
        return log(RigorousReal.exact(5, p)) / 2
    raise ValueError(tag)


def eval_constant(tag: Union[Constant, str], precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """Enclosure of a named constant with relative radius at most 2**(1 - precision_bits)."""
    if precision_bits < 32:
        raise ValueError("precision_bits must be at least 32")
    return _constant(Constant(tag), precision_bits)


# ---------------------------------------------------------------------------
# distances and comparisons
# ---------------------------------------------------------------------------

def nearest_integer_distance(x: RigorousReal) -> RigorousReal:
    """Enclosure of ||x||, the distance from x to the nearest integer."""
    if x.radius >= Fraction(1, 4):
        raise PrecisionError("enclosure too wide to locate the nearest integer; refine first")
    n = math.floor(x.midpoint + Fraction(1, 2))
    lo, hi = x.lower - n, x.upper - n

    def dist(t: Fraction) -> Fraction:
        t = abs(t)
        return min(t, 1 - t)

    half = Fraction(1, 2)
    d_lo, d_hi = dist(lo), dist(hi)
    top = half if (lo <= half <= hi or lo <= -half <= hi) else max(d_lo, d_hi)
    bottom = Fraction(0) if lo <= 0 <= hi else min(d_lo, d_hi)
    return RigorousReal((bottom + top) / 2, (top - bottom) / 2, x.precision_bits)


class Ordering(enum.Enum):
    LESS = -1
    GREATER = 1


Enclosable = Union[RigorousReal, Callable[[int], RigorousReal]]


def resolve_compare(x: Enclosable, y: Enclosable, max_precision_bits: int = MAX_PRECISION,
                    start_precision_bits: int = DEFAULT_PRECISION) -> Ordering:
    """Sign of x - y, re-evaluating at doubled precision until the enclosures separate.

    ``x`` and ``y`` are either fixed enclosures or callables mapping a
    precision in bits to an enclosure; only callables benefit from refinement.
    """
    refinable = callable(x) or callable(y)
    p = start_precision_bits
    while True:
        ex = x(p) if callable(x) else x
        ey = y(p) if callable(y) else y
        if ex.upper < ey.lower:
            return Ordering.LESS
        if ex.lower > ey.upper:
            return Ordering.GREATER
        if not refinable or p >= max_precision_bits:
            raise UndecidableError(f"no separation up to {p} bits (possible exact equality)")
        p = min(2 * p, max_precision_bits)
