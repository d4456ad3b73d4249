import pytest

from fibdiff.errors import ParityError, RangeError
from fibdiff.sequences import (
    INDEX_LIMIT,
    Congruence,
    Kind,
    binet_residual,
    difference_factorization,
    fib,
    is_power_of_two,
    lucas,
    power_of_two_terms,
    scan_power_of_two_terms,
)


def naive_fib(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


@pytest.mark.parametrize("k,value", [(0, 0), (1, 1), (6, 8), (12, 144), (-5, 5), (-6, -8)])
def test_fib_values(k, value):
    assert fib(k) == value


@pytest.mark.parametrize("k,value", [(0, 2), (1, 1), (3, 4), (5, 11), (-1, -1), (-2, 3)])
def test_lucas_values(k, value):
    assert lucas(k) == value


def test_fast_doubling_matches_recurrence():
    for k in range(0, 400):
        assert fib(k) == naive_fib(k)
    assert fib(1000) == naive_fib(1000)


def test_index_limit():
    with pytest.raises(RangeError):
        fib(INDEX_LIMIT + 1)
    with pytest.raises(RangeError):
        lucas(-INDEX_LIMIT - 1)


@pytest.mark.parametrize("k", [1, 10, 50])
def test_binet_residual_encloses_zero(k):
    r = binet_residual(k, 256)
    assert r.contains(0)
    if k == 50:
        assert r.radius < 1e-10


def test_difference_factorization_examples():
    r = difference_factorization(9, 3)
    assert (r.left.value, r.right.value, r.product) == (8, 4, 32)
    assert r.congruence_case is Congruence.MOD4_SHIFT2
    r = difference_factorization(13, 1)
    assert (r.left.index, r.right.index, r.product) == (6, 7, 232)
    assert r.product == fib(13) - fib(1)
    r = difference_factorization(2, 0)
    assert (r.left.value, r.right.value) == (1, 1)


def test_difference_factorization_parity():
    with pytest.raises(ParityError):
        difference_factorization(7, 2)


def test_power_of_two_table():
    assert (6, 3) in power_of_two_terms(Kind.FIBONACCI)
    assert (3, 2) in power_of_two_terms(Kind.LUCAS)
    assert all(k < 4 for k, _ in power_of_two_terms(Kind.LUCAS))


@pytest.mark.parametrize("kind", list(Kind))
def test_power_of_two_table_rechecked_by_scan(kind):
    assert scan_power_of_two_terms(kind, 1000) == power_of_two_terms(kind)


def test_is_power_of_two():
    assert [d for d in range(-2, 70) if is_power_of_two(d)] == [1, 2, 4, 8, 16, 32, 64]
