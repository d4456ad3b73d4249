"""Exact Fibonacci and Lucas numbers and the identities the case analysis relies on."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParityError, RangeError
from .rigor import DEFAULT_PRECISION, RigorousReal, eval_constant

INDEX_LIMIT = 10**6


class Kind(str, enum.Enum):
    FIBONACCI = "fibonacci"
    LUCAS = "lucas"


@dataclass(frozen=True)
class SequenceTerm:
    kind: Kind
    index: int
    value: int


def _fib_pair(k: int) -> tuple[int, int]:
    """(F_k, F_{k+1}) for k >= 0 by fast doubling."""
    if k == 0:
        return 0, 1
    a, b = _fib_pair(k >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if k & 1:
        return d, c + d
    return c, d


def _check_index(k: int) -> None:
    if abs(k) > INDEX_LIMIT:
        raise RangeError(f"index {k} exceeds the guard |k| <= {INDEX_LIMIT}")


def fib(k: int) -> int:
    _check_index(k)
    if k < 0:
        value = _fib_pair(-k)[0]
        return value if (-k) % 2 == 1 else -value
    return _fib_pair(k)[0]


def lucas(k: int) -> int:
    _check_index(k)
    if k < 0:
        value = lucas(-k)
        return value if k % 2 == 0 else -value
    f, f_next = _fib_pair(k)
    # L_k = F_{k-1} + F_{k+1} = 2 F_{k+1} - F_k
    return 2 * f_next - f


def term(kind: Kind, k: int) -> SequenceTerm:
    kind = Kind(kind)
    value = fib(k) if kind is Kind.FIBONACCI else lucas(k)
    return SequenceTerm(kind, k, value)


def binet_residual(k: int, precision_bits: int = DEFAULT_PRECISION) -> RigorousReal:
    """Enclosure of F_k - (alpha^k - beta^k)/sqrt(5); contains 0."""
    if k < 1:
        raise ValueError("binet_residual needs k >= 1")
    alpha = eval_constant("alpha", precision_bits)
    beta = eval_constant("beta", precision_bits)
    sqrt5 = eval_constant("sqrt5", precision_bits)
    return fib(k) - (alpha ** k - beta ** k) / sqrt5


class Congruence(str, enum.Enum):
    MOD4_EQUAL = "mod4_equal"
    MOD4_SHIFT2 = "mod4_shift2"


@dataclass(frozen=True)
class FactorizationResult:
    left: SequenceTerm
    right: SequenceTerm
    congruence_case: Congruence

    @property
    def product(self) -> int:
        return self.left.value * self.right.value


def difference_factorization(n: int, m: int) -> FactorizationResult:
    """Write F_n - F_m as a Fibonacci times a Lucas number when n and m share parity.

    n = m (mod 4) gives F_{(n-m)/2} L_{(n+m)/2}; n = m + 2 (mod 4) gives
    F_{(n+m)/2} L_{(n-m)/2}.
    """
    if not n > m >= 0:
        raise ValueError("need n > m >= 0")
    if (n - m) % 2:
        raise ParityError(f"n={n} and m={m} differ in parity")
    half_diff, half_sum = (n - m) // 2, (n + m) // 2
    if (n - m) % 4 == 0:
        return FactorizationResult(term(Kind.FIBONACCI, half_diff), term(Kind.LUCAS, half_sum),
                                   Congruence.MOD4_EQUAL)
    return FactorizationResult(term(Kind.FIBONACCI, half_sum), term(Kind.LUCAS, half_diff),
                               Congruence.MOD4_SHIFT2)


def is_power_of_two(d: int) -> bool:
    return d > 0 and d & (d - 1) == 0


# The only perfect powers among Fibonacci numbers are 0, 1, 8, 144 and among
# Lucas numbers 1, 4 (the classical perfect-power classification).  Powers of two 2^e with e >= 2
# are perfect powers, so they can only be F_6 = 8 or L_3 = 4; the values 1 and 2
# are settled by direct inspection of the small indices.
_POWER_OF_TWO_TERMS = {
    Kind.FIBONACCI: frozenset({(1, 0), (2, 0), (3, 1), (6, 3)}),
    Kind.LUCAS: frozenset({(0, 1), (1, 0), (3, 2)}),
}


def power_of_two_terms(kind: Kind) -> frozenset[tuple[int, int]]:
    """All (k, e) with k >= 0 and term_k = 2**e."""
    return _POWER_OF_TWO_TERMS[Kind(kind)]


def scan_power_of_two_terms(kind: Kind, limit: int) -> frozenset[tuple[int, int]]:
    """Bounded re-check of :func:`power_of_two_terms` over 0 <= k <= limit."""
    kind = Kind(kind)
    found = set()
    a, b = (0, 1) if kind is Kind.FIBONACCI else (2, 1)
    for k in range(limit + 1):
        if is_power_of_two(a):
            found.add((k, a.bit_length() - 1))
        a, b = b, a + b
    return frozenset(found)
