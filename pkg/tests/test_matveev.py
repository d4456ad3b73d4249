import time
from fractions import Fraction

import mpmath
import pytest

from fibdiff.errors import InstanceError
from fibdiff.heights import named, rational
from fibdiff.matveev import (
    LinearFormInstance,
    absolute_bound,
    absolute_inequality_gap,
    constant_C,
    first_linear_form,
    matveev_exponent,
    round_up_significant,
    second_linear_form,
    shift_bound_inequality,
    side_conditions,
)
from fibdiff.rigor import Constant


def test_constant_C_against_mpmath():
    expected = mpmath.mpf("1.4") * 30 ** 6 * mpmath.mpf(3) ** mpmath.mpf("4.5") * 4
    assert abs(float(constant_C()) / float(expected) - 1) < 1e-15
    assert abs(float(constant_C()) - 5.727e11) / 5.727e11 < 1e-3


def test_first_form_side_conditions():
    conds = side_conditions(first_linear_form())
    assert [c.satisfied for c in conds] == [True, True, True]


@pytest.mark.parametrize("shift", [1, 3, 4, 12, 146])
def test_second_form_side_conditions(shift):
    assert all(c.satisfied for c in side_conditions(second_linear_form(shift)))


def test_A_floor_violation():
    inst = LinearFormInstance((rational(2), named(Constant.ALPHA), named(Constant.SQRT5)), ("a", "-n", "1"),
                              (Fraction(14, 10), Fraction(1, 10), Fraction(17, 10)))
    with pytest.raises(InstanceError):
        matveev_exponent(inst, 10)


def test_exponent_matches_formula():
    n = 10**6
    E = matveev_exponent(first_linear_form(), n)
    expected = (mpmath.mpf("1.4") * 30 ** 6 * mpmath.mpf(3) ** mpmath.mpf("4.5") * 4 * (1 + mpmath.log(2))
                * (1 + mpmath.log(n)) * mpmath.mpf("1.4") * mpmath.mpf("0.5") * mpmath.mpf("1.7"))
    assert abs(float(E) / float(expected) - 1) < 1e-14


def test_exponent_monotone_in_B_and_A():
    inst = first_linear_form()
    values = [matveev_exponent(inst, b) for b in (1, 2, 10, 10**5, 10**30)]
    assert all(x.upper <= y.lower for x, y in zip(values, values[1:]))
    bigger = LinearFormInstance(inst.gammas, inst.coeff_names, (inst.A[0], inst.A[1], Fraction(2)))
    assert matveev_exponent(inst, 100).upper < matveev_exponent(bigger, 100).lower


def test_shift_coefficient_within_reference():
    report = shift_bound_inequality(201)
    assert report.resolved_bound <= 24 * 10**11
    assert report.resolved_bound == 1371590894114


def test_absolute_bound_symbolic():
    start = time.perf_counter()
    report = absolute_bound(shift_coefficient=24 * 10**11)
    assert time.perf_counter() - start < 10
    assert report.resolved_bound <= 291 * 10**26
    n = report.resolved_bound
    assert not absolute_inequality_gap(n, shift_coefficient=24 * 10**11).is_positive()
    assert absolute_inequality_gap(n + 1, shift_coefficient=24 * 10**11).is_positive()


def test_absolute_bound_with_shift_cap():
    b146 = absolute_bound(shift_cap=146).resolved_bound
    b3 = absolute_bound(shift_cap=3).resolved_bound
    assert b146 <= 756 * 10**13
    assert b3 < b146


def test_absolute_bound_mpmath_crossing():
    # independent root of n log(alpha) - log 3 = P (1 + log n)(log 20 + 146 log alpha)
    mpmath.mp.dps = 40
    la = mpmath.log((1 + mpmath.sqrt(5)) / 2)
    P = (mpmath.mpf("1.4") * 30 ** 6 * mpmath.mpf(3) ** mpmath.mpf("4.5") * 4 * (1 + mpmath.log(2))
         * mpmath.mpf("1.4") * mpmath.mpf("0.5"))
    f = lambda x: x * la - mpmath.log(3) - P * (1 + mpmath.log(x)) * (mpmath.log(20) + 146 * la)
    root = mpmath.findroot(f, 3.8e15)
    assert absolute_bound(shift_cap=146).resolved_bound == int(mpmath.floor(root))


def test_round_up_significant():
    assert round_up_significant(8114780667399787044024014588) == 812 * 10**25
    assert round_up_significant(7600) == 7600
    assert round_up_significant(7601) == 7610
