"""Matveev's lower bound for linear forms in logarithms, and the absolute bounds it yields.

For positive real algebraic gamma_1..gamma_t in a field of degree D and
integers b_i with B >= max |b_i|, a nonzero Lambda = prod gamma_i^b_i - 1
satisfies |Lambda| > exp(-E) with

    E = 1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * (1 + log B) * A_1 ... A_t

whenever A_i >= max(D h(gamma_i), |log gamma_i|, 0.16).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConvergenceError, InstanceError
from .heights import AlgebraicDescriptor, Form, gamma3, height, height_bound_gamma3, named, rational
from .rigor import (
    DEFAULT_PRECISION,
    Constant,
    RigorousReal,
    eval_constant,
    log,
    sqrt,
)

A_FLOOR = Fraction(16, 100)


@dataclass(frozen=True)
class LinearFormInstance:
    """Data for one application of the lower bound.

    ``A`` holds exact rationals; any value at least max(D h, |log gamma|, 0.16)
    is admissible, so rounding a computed bound upward is always safe.
    """

    gammas: tuple[AlgebraicDescriptor, ...]
    coeff_names: tuple[str, ...]
    A: tuple[Fraction, ...]
    D: int = 2
    B_role: str = "n"

    @property
    def t(self) -> int:
        return len(self.gammas)


@dataclass(frozen=True)
class SideCondition:
    gamma: str
    A: Fraction
    D_times_height: RigorousReal
    abs_log: RigorousReal
    satisfied: bool


def _height_upper(g: AlgebraicDescriptor, p: int) -> RigorousReal:
    if g.form is Form.GAMMA3:
        return height_bound_gamma3(g.shift, p)
    return height(g, p)


def side_conditions(inst: LinearFormInstance, precision_bits: int = DEFAULT_PRECISION) -> list[SideCondition]:
    """Check A_i >= max(D h(gamma_i), |log gamma_i|, 0.16) for every i, rigorously."""
    out = []
    for g, a in zip(inst.gammas, inst.A):
        dh = inst.D * _height_upper(g, precision_bits)
        al = abs(log(g.value(precision_bits)))
        ok = a >= A_FLOOR and a >= dh.upper and a >= al.upper
        out.append(SideCondition(str(g), a, dh, al, ok))
    return out


def first_linear_form() -> LinearFormInstance:
    """gamma = (2, alpha, sqrt 5), b = (a, -n, 1), A = (1.4, 0.5, 1.7)."""
    return LinearFormInstance(
        gammas=(rational(2), named(Constant.ALPHA), named(Constant.SQRT5)),
        coeff_names=("a", "-n", "1"),
        A=(Fraction(14, 10), Fraction(1, 2), Fraction(17, 10)),
    )


def second_form_A3(shift: int, precision_bits: int = DEFAULT_PRECISION) -> Fraction:
    """An exact rational at least log 20 + shift * log(alpha) = 2 * height_bound_gamma3(shift)."""
    return (2 * height_bound_gamma3(shift, precision_bits)).upper


def second_linear_form(shift: int, precision_bits: int = DEFAULT_PRECISION) -> LinearFormInstance:
    """gamma = (2, alpha, sqrt5 (1 - alpha^-shift)^-1), b = (a, -n, 1)."""
    return LinearFormInstance(
        gammas=(rational(2), named(Constant.ALPHA), gamma3(shift)),
        coeff_names=("a", "-n", "1"),
        A=(Fraction(14, 10), Fraction(1, 2), second_form_A3(shift, precision_bits)),
    )


def prefactor(t: int, D: int, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D)."""
    p = precision_bits
    t45 = RigorousReal.exact(t ** 4, p) * sqrt(RigorousReal.exact(t, p))
    return Fraction(14, 10) * (30 ** (t + 3)) * t45 * (D * D) * (1 + log(RigorousReal.exact(D, p)))


def constant_C(t: int = 3, D: int = 2, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """1.4 * 30^(t+3) * t^4.5 * D^2, the constant the proof names C."""
    p = precision_bits
    t45 = RigorousReal.exact(t ** 4, p) * sqrt(RigorousReal.exact(t, p))
    return Fraction(14, 10) * (30 ** (t + 3)) * t45 * (D * D)


def matveev_exponent(inst: LinearFormInstance, B_value,
                     precision_bits: int = DEFAULT_PRECISION, check: bool = True) -> RigorousReal:
    """Enclosure of E such that |Lambda| > exp(-E)."""
    if check:
        bad = [c for c in side_conditions(inst, precision_bits) if not c.satisfied]
        if bad:
            raise InstanceError("A_i side condition violated for " + ", ".join(c.gamma for c in bad))
    if not isinstance(B_value, RigorousReal):
        B_value = RigorousReal.exact(B_value, precision_bits)
    if B_value.lower < 1:
        raise InstanceError("B must be at least 1")
    product = Fraction(1)
    for a in inst.A:
        product *= a
    return prefactor(inst.t, inst.D, precision_bits) * (1 + log(B_value)) * product


# ---------------------------------------------------------------------------
# bounds derived from the two linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """Outcome of solving one of the transcendental inequalities.

    ``resolved_bound`` is a coefficient for the shift inequality and the
    largest admissible n for the absolute bound.
    """

    name: str
    constant_C: RigorousReal
    inequality: str
    resolved_bound: int
    reference_value: Fraction
    details: dict = field(default_factory=dict)


SHIFT_COEFFICIENT_REFERENCE = Fraction(24 * 10**11)
ABSOLUTE_BOUND_REFERENCE = Fraction(291 * 10**26)
REFINED_BOUND_REFERENCE = Fraction(756 * 10**13)


def shift_bound_inequality(n_min: int = 201, precision_bits: int = DEFAULT_PRECISION) -> BoundReport:
    """Certify (n - m) log(alpha) < c log n for all n >= n_min with an integer c.

    From |Lambda_1| < 4 / alpha^(n-m) and the lower bound:
    (n - m) log alpha < log 4 + K (1 + log n), K = prefactor * A1 A2 A3.
    For n >= n_min, log 4 + K(1 + log n) <= (K + (log 4 + K) / log n_min) log n.
    """
    if n_min < 3:
        raise ValueError("n_min must be at least 3")
    p = precision_bits
    inst = first_linear_form()
    bad = [c for c in side_conditions(inst, p) if not c.satisfied]
    if bad:
        raise InstanceError("first linear form violates its side conditions")
    K = matveev_exponent(inst, 1, p, check=False)  # B = 1 makes (1 + log B) = 1
    log4 = log(RigorousReal.exact(4, p))
    coefficient = K + (log4 + K) / log(RigorousReal.exact(n_min, p))
    c = math.ceil(coefficient.upper)
    return BoundReport(
        name="shift_inequality",
        constant_C=constant_C(inst.t, inst.D, p),
        inequality=f"(n-m) log(alpha) < {c} log n for n >= {n_min}",
        resolved_bound=c,
        reference_value=SHIFT_COEFFICIENT_REFERENCE,
        details={"K": K, "coefficient": coefficient, "n_min": n_min},
    )


def _absolute_terms(shift_cap: Optional[int], shift_coefficient: Optional[int], p: int):
    """Pieces of g(x) = P (1 + log x)(a + b log x), the right side of the second inequality."""
    inst = second_linear_form(1, p)
    P = prefactor(inst.t, inst.D, p) * (inst.A[0] * inst.A[1])
    log20 = log(RigorousReal.exact(20, p))
    if shift_cap is not None:
        a = log20 + shift_cap * eval_constant(Constant.LOG_ALPHA, p)
        b = RigorousReal.exact(0, p)
    else:
        a = log20
        b = RigorousReal.exact(shift_coefficient, p)
    return P, a, b


def absolute_inequality_gap(n: int, shift_cap: Optional[int] = None, shift_coefficient: Optional[int] = None,
                            precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """n log(alpha) - log 3 - g(n); a solution needs this to be negative."""
    p = precision_bits
    P, a, b = _absolute_terms(shift_cap, shift_coefficient, p)
    ln = log(RigorousReal.exact(n, p))
    lhs = n * eval_constant(Constant.LOG_ALPHA, p) - log(RigorousReal.exact(3, p))
    return lhs - P * (1 + ln) * (a + b * ln)


def absolute_inequality_slope(x: int, shift_cap: Optional[int] = None, shift_coefficient: Optional[int] = None,
                              precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """log(alpha) - g'(x) with g'(x) = P (a + b + 2 b log x) / x."""
    p = precision_bits
    P, a, b = _absolute_terms(shift_cap, shift_coefficient, p)
    ln = log(RigorousReal.exact(x, p))
    return eval_constant(Constant.LOG_ALPHA, p) - P * (a + b + 2 * b * ln) / x


def absolute_bound(shift_cap: Optional[int] = None, shift_coefficient: Optional[int] = None,
                   precision_bits: int = DEFAULT_PRECISION) -> BoundReport:
    """Largest n compatible with n log(alpha) - log 3 < E(n) for the second linear form.

    Pass ``shift_cap`` to use (n - m) <= shift_cap, or ``shift_coefficient`` c
    for the symbolic (n - m) log(alpha) < c log n.  The gap f(n) is convex on
    [2, inf) and negative at 2, so doubling followed by bisection on the
    predicate "f(n) certifiably positive" finds the crossing; undecided probes
    count as not positive, which only moves the bound up.
    """
    if (shift_cap is None) == (shift_coefficient is None):
        raise ValueError("give exactly one of shift_cap and shift_coefficient")
    if shift_cap is not None and shift_cap < 1:
        raise ValueError("shift_cap must be positive")

    p = precision_bits

    def positive(n: int) -> bool:
        return absolute_inequality_gap(n, shift_cap, shift_coefficient, p).is_positive()

    lo = 2
    if positive(lo):
        raise ConvergenceError("gap unexpectedly positive at n = 2")
    hi = 4
    while not positive(hi):
        lo = hi
        hi *= 2
        if hi.bit_length() > p // 2:
            raise ConvergenceError("doubling did not reach a positive gap")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if positive(mid):
            hi = mid
        else:
            lo = mid
    bound = lo
    gap = absolute_inequality_gap(bound + 1, shift_cap, shift_coefficient, p)
    slope = absolute_inequality_slope(bound + 1, shift_cap, shift_coefficient, p)
    if not (gap.is_positive() and slope.is_positive()):
        raise ConvergenceError("could not certify the inequality fails beyond the bound")

    if shift_cap is not None:
        shift_text = f"log 20 + {shift_cap} log(alpha)"
        reference = REFINED_BOUND_REFERENCE if shift_cap == 146 else None
    else:
        shift_text = f"log 20 + {shift_coefficient} log n"
        reference = ABSOLUTE_BOUND_REFERENCE if shift_coefficient == SHIFT_COEFFICIENT_REFERENCE else None
    return BoundReport(
        name="absolute_bound",
        constant_C=constant_C(3, 2, p),
        inequality=f"n log(alpha) - log 3 < C (1 + log 2)(1 + log n)(1.4)(0.5)({shift_text})",
        resolved_bound=bound,
        reference_value=reference,
        details={"gap_at_bound_plus_one": gap, "slope_at_bound_plus_one": slope,
                 "shift_cap": shift_cap, "shift_coefficient": shift_coefficient},
    )


def round_up_significant(x: int, digits: int = 3) -> int:
    """Smallest integer >= x of the form d * 10^k with d having ``digits`` digits."""
    if x <= 0:
        raise ValueError("x must be positive")
    k = max(0, len(str(x)) - digits)
    scale = 10 ** k
    return -(-x // scale) * scale
