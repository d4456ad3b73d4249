from fractions import Fraction

from fibdiff.quadratic import QSqrt5
from fibdiff.sequences import fib, lucas


def test_alpha_is_root():
    a = QSqrt5.alpha()
    assert a * a - a - 1 == 0


def test_binet_exact():
    a, b, r5 = QSqrt5.alpha(), QSqrt5.beta(), QSqrt5.sqrt5()
    for k in range(-20, 40):
        assert (a ** k - b ** k) / r5 == fib(k)
        assert a ** k + b ** k == lucas(k)


def test_norm_and_inverse():
    a = QSqrt5.alpha()
    assert a.norm() == -1
    assert a * a.inverse() == 1
    x = QSqrt5(Fraction(3, 2), Fraction(-7, 5))
    assert x * x.inverse() == 1


def test_shift_identities():
    a, r5 = QSqrt5.alpha(), QSqrt5.sqrt5()
    assert r5 / (1 - a ** -4) == a ** 2
    assert r5 / (1 - a ** -12) == a ** 6 / 8
    for k in range(1, 30):
        if k % 2 == 0:
            assert a ** (2 * k) - 1 == r5 * fib(k) * a ** k
        else:
            assert a ** (2 * k) + 1 == r5 * fib(k) * a ** k


def test_enclosure():
    assert abs(float(QSqrt5.alpha().enclose(128)) - 1.618033988749895) < 1e-15
