"""Certified continued-fraction expansion of log 2 / log(alpha)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .errors import PrecisionCeilingError
from .rigor import MAX_PRECISION, Constant, RigorousReal, eval_constant

MAX_TERMS = 500
TARGET = "log2_over_logalpha"


def gamma_enclosure(precision_bits: int) -> RigorousReal:
    """log 2 / log(alpha)."""
    return eval_constant(Constant.LOG2, precision_bits) / eval_constant(Constant.LOG_ALPHA, precision_bits)


TARGETS: dict[str, Callable[[int], RigorousReal]] = {TARGET: gamma_enclosure}


def euclid_quotients(x: Fraction) -> Iterator[int]:
    """Partial quotients of a rational (the stream terminates)."""
    n, d = x.numerator, x.denominator
    while d:
        q, r = divmod(n, d)
        yield q
        n, d = d, r


def convergents(quotients) -> list[tuple[int, int]]:
    """(p_k, q_k) with p_0/q_0 = a_0/1."""
    out = []
    p_prev, q_prev, p, q = 1, 0, None, None
    for i, a in enumerate(quotients):
        if i == 0:
            p, q = a, 1
        else:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out


@dataclass(frozen=True)
class ContinuedFraction:
    target: str
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    precision_bits: int

    def __len__(self) -> int:
        return len(self.quotients)

    def q(self, k: int) -> int:
        return self.convergents[k][1]

    def p(self, k: int) -> int:
        return self.convergents[k][0]


def _certified_prefix(lo: Fraction, hi: Fraction, count: int) -> list[int]:
    """Common quotient prefix of both endpoints, capped at ``count``.

    A quotient is accepted only if both endpoint expansions continue past it,
    so every real in [lo, hi] shares the prefix.
    """
    prefix = []
    a_stream, b_stream = euclid_quotients(lo), euclid_quotients(hi)
    a_next, b_next = next(a_stream, None), next(b_stream, None)
    while len(prefix) < count:
        a, b = a_next, b_next
        if a is None or b is None or a != b:
            break
        a_next, b_next = next(a_stream, None), next(b_stream, None)
        if a_next is None or b_next is None:
            break
        prefix.append(a)
    return prefix


def expand(target: str = TARGET, count: int = 70, start_precision_bits: int = 256,
           max_precision_bits: int = MAX_PRECISION) -> ContinuedFraction:
    """The first ``count`` partial quotients of the target, each certified.

    The quotient algorithm runs on the lower and upper rational endpoints of
    an enclosure; precision doubles until the two streams agree on ``count``
    terms.
    """
    if not 1 <= count <= MAX_TERMS:
        raise ValueError(f"count must lie in [1, {MAX_TERMS}]")
    enclose = TARGETS[target]
    p = max(start_precision_bits, 4 * count)
    while True:
        g = enclose(p)
        prefix = _certified_prefix(g.lower, g.upper, count)
        if len(prefix) == count:
            return ContinuedFraction(target, tuple(prefix), tuple(convergents(prefix)), p)
        if p >= max_precision_bits:
            raise PrecisionCeilingError(
                f"only {len(prefix)} of {count} quotients certified at {p} bits")
        p = min(2 * p, max_precision_bits)


def first_q_exceeding(cf: ContinuedFraction, threshold: int) -> tuple[int, int]:
    """Smallest index k with q_k > threshold, extending the expansion on demand."""
    if threshold < 1:
        raise ValueError("threshold must be at least 1")
    while True:
        for k, (_, q) in enumerate(cf.convergents):
            if q > threshold:
                return k, q
        if len(cf) >= MAX_TERMS:
            raise PrecisionCeilingError("threshold beyond the supported expansion length")
        cf = expand(cf.target, min(MAX_TERMS, 2 * len(cf)))
