from fractions import Fraction

import mpmath
import pytest

from fibdiff.contfrac import MAX_TERMS, convergents, euclid_quotients, expand, first_q_exceeding, gamma_enclosure
from fibdiff.rigor import RigorousReal


def mp_quotients(count, dps=400):
    with mpmath.workdps(dps):
        x = mpmath.log(2) / mpmath.log((1 + mpmath.sqrt(5)) / 2)
        out = []
        for _ in range(count):
            a = int(mpmath.floor(x))
            out.append(a)
            x = 1 / (x - a)
    return out


@pytest.fixture(scope="module")
def cf():
    return expand(count=120)


def test_quotients_against_mpmath(cf):
    assert list(cf.quotients) == mp_quotients(120)
    assert cf.quotients[:20] == (1, 2, 3, 1, 2, 3, 2, 4, 2, 1, 2, 11, 2, 1, 11, 1, 1, 134, 2, 2)


def test_determinant_identity(cf):
    for k in range(1, len(cf)):
        assert cf.p(k) * cf.q(k - 1) - cf.p(k - 1) * cf.q(k) == (-1) ** (k + 1)


def test_best_approximation(cf):
    g = gamma_enclosure(2048)
    for k in range(len(cf) - 1):
        err = abs(g * cf.q(k) - cf.p(k))
        assert err.upper < Fraction(1, cf.q(k + 1))


def test_prefix_stable_under_doubling():
    a = expand(count=80)
    b = expand(count=80, start_precision_bits=2 * a.precision_bits)
    assert a.quotients == b.quotients


def test_euclid_on_rationals():
    assert list(euclid_quotients(Fraction(355, 113))) == [3, 7, 16]
    assert convergents([3, 7, 16]) == [(3, 1), (22, 7), (355, 113)]


def test_first_q_exceeding(cf):
    assert first_q_exceeding(cf, 1) == (1, 2)
    k, q = first_q_exceeding(cf, 6 * 76 * 10**14)
    assert k == 36 and q > 6 * 76 * 10**14 and cf.q(k - 1) <= 6 * 76 * 10**14
    k, q = first_q_exceeding(cf, 6 * 291 * 10**26)
    assert k == 66


def test_first_q_exceeding_extends_expansion():
    short = expand(count=10)
    k, q = first_q_exceeding(short, 10**40)
    assert q > 10**40 and k > 10


def test_count_limits():
    with pytest.raises(ValueError):
        expand(count=MAX_TERMS + 1)
    assert len(expand(count=MAX_TERMS)) == MAX_TERMS
