"""Exhaustive search for F_n - F_m = 2^a below a cutoff."""

from __future__ import annotations

from typing import NamedTuple

from .sequences import fib, is_power_of_two


class SolutionTriple(NamedTuple):
    n: int
    m: int
    a: int

    @property
    def shift(self) -> int:
        return self.n - self.m


def is_solution(t: SolutionTriple) -> bool:
    n, m, a = t
    if min(n, m, a) < 0 or not m < n:
        return False
    return fib(n) - fib(m) == 1 << a


def brute_force(n_max: int) -> list[SolutionTriple]:
    """Every solution with 0 <= m < n <= n_max, sorted by (n, m)."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    values = [0, 1]
    while len(values) <= n_max:
        values.append(values[-1] + values[-2])
    found = []
    for n in range(1, n_max + 1):
        fn = values[n]
        for m in range(n):
            d = fn - values[m]
            if is_power_of_two(d):
                found.append(SolutionTriple(n, m, d.bit_length() - 1))
    return found
