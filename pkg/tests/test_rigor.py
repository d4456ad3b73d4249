from fractions import Fraction

import mpmath
import pytest

from fibdiff.errors import DomainError, PrecisionError, UndecidableError
from fibdiff.rigor import (
    Constant,
    Ordering,
    RigorousReal,
    arith,
    div,
    eval_constant,
    exp,
    log,
    nearest_integer_distance,
    pow_int,
    resolve_compare,
    sqrt,
    sub,
)


def mp_of(tag, dps):
    with mpmath.workdps(dps):
        return {
            Constant.ALPHA: (1 + mpmath.sqrt(5)) / 2,
            Constant.BETA: (1 - mpmath.sqrt(5)) / 2,
            Constant.SQRT5: mpmath.sqrt(5),
            Constant.LOG2: mpmath.log(2),
            Constant.LOG_ALPHA: mpmath.log((1 + mpmath.sqrt(5)) / 2),
            Constant.LOG_SQRT5: mpmath.log(mpmath.sqrt(5)),
        }[tag]


def contains_mp(x: RigorousReal, value, dps) -> bool:
    with mpmath.workdps(dps):
        lo = mpmath.mpf(x.lower.numerator) / x.lower.denominator
        hi = mpmath.mpf(x.upper.numerator) / x.upper.denominator
        return lo <= value <= hi


@pytest.mark.parametrize("tag", list(Constant))
@pytest.mark.parametrize("bits", [64, 256, 1024])
def test_constants_enclose_mpmath(tag, bits):
    x = eval_constant(tag, bits)
    dps = bits // 3 + 40
    assert contains_mp(x, mp_of(tag, dps), dps)
    assert x.radius <= Fraction(2) ** (2 - bits) * abs(x.midpoint)


def test_alpha_defining_polynomial():
    a = eval_constant(Constant.ALPHA, 64)
    assert (a * a - a - 1).contains(0)
    assert abs(float(a) - 1.6180339887) < 1e-10


def test_log_constants_decimals():
    assert eval_constant(Constant.LOG_ALPHA, 64).to_decimal(4) == "0.4812"
    assert eval_constant(Constant.LOG2, 64).to_decimal(4) == "0.6931"


def test_pow_int_alpha_fourth():
    a = eval_constant(Constant.ALPHA, 256)
    a4 = pow_int(a, 4)
    assert (a4 - (3 * a + 2)).contains(0)
    assert a4.to_decimal(5) == "6.8541"


def test_log_exp_inverse():
    one = RigorousReal.exact(1, 128)
    assert log(exp(one)).contains(1)
    assert exp(log(RigorousReal.exact(7, 128))).contains(7)


def test_three_over_shift_factor():
    a = eval_constant(Constant.ALPHA, 128)
    x = div(1, sub(1, pow_int(a, -3)))
    assert x.lower > 1 and x.upper < 3


def test_exact_rationals_stay_exact():
    x, y = RigorousReal.exact(Fraction(3, 7)), RigorousReal.exact(Fraction(-5, 11))
    for op in ("add", "sub", "mul", "div"):
        assert arith(op, x, y).is_exact


def test_division_by_zero_straddle():
    with pytest.raises(DomainError):
        div(1, RigorousReal(Fraction(0), Fraction(1, 10)))


def test_sqrt_and_log_domain():
    with pytest.raises(DomainError):
        sqrt(RigorousReal.exact(-1))
    with pytest.raises(DomainError):
        log(RigorousReal.exact(0))


def test_high_precision_log_alpha():
    x = eval_constant(Constant.LOG_ALPHA, 4096)
    assert contains_mp(x, mp_of(Constant.LOG_ALPHA, 1400), 1400)


@pytest.mark.parametrize("value,dist", [(Fraction(3), 0), (Fraction(1, 2), Fraction(1, 2)),
                                        (Fraction(27, 10), Fraction(3, 10))])
def test_nearest_integer_distance(value, dist):
    d = nearest_integer_distance(RigorousReal.exact(value))
    assert d.contains(dist) and d.is_exact


def test_nearest_integer_distance_straddle_and_wide():
    d = nearest_integer_distance(RigorousReal(Fraction(1, 2), Fraction(1, 100)))
    assert d.upper == Fraction(1, 2) and d.lower == Fraction(49, 100)
    with pytest.raises(PrecisionError):
        nearest_integer_distance(RigorousReal(Fraction(0), Fraction(1, 2)))


def test_resolve_compare_examples():
    alpha = lambda p: eval_constant(Constant.ALPHA, p)
    assert resolve_compare(alpha, RigorousReal.exact(Fraction(3, 2))) is Ordering.GREATER
    four_over = lambda p: 4 / pow_int(eval_constant(Constant.ALPHA, p), 3)
    assert resolve_compare(four_over, RigorousReal.exact(Fraction(95, 100))) is Ordering.LESS
    with pytest.raises(UndecidableError):
        resolve_compare(RigorousReal.exact(2), RigorousReal.exact(2))


def test_resolve_compare_refines_tight_gap():
    # log 2 / log alpha differs from its 40th convergent by well under 2^-100
    from fibdiff.contfrac import expand, gamma_enclosure
    cf = expand(count=45)
    p40, q40 = cf.p(40), cf.q(40)
    r = resolve_compare(gamma_enclosure, RigorousReal.exact(Fraction(p40, q40)), start_precision_bits=64)
    assert r is (Ordering.GREATER if 40 % 2 == 0 else Ordering.LESS)
