"""Residual shifts n - m in {1, 2, 4, 12} settled by exact identities."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import UnsupportedShiftError
from .search import SolutionTriple, brute_force, is_solution
from .sequences import Kind, difference_factorization, fib, lucas, power_of_two_terms

RESIDUAL_SHIFTS = (1, 2, 4, 12)


class Identity(str, enum.Enum):
    FM_MINUS1 = "Fm_minus1"            # F_{m+1} - F_m = F_{m-1}
    FM_PLUS1 = "Fm_plus1"              # F_{m+2} - F_m = F_{m+1}
    LUCAS_VIA_1_4 = "Lucas_via_1_4"    # F_{m+4} - F_m = F_{m+3} + F_{m+1} = L_{m+2}
    DIFFERENCE_FACTORIZATION = "Lemma2_factorization"  # F_{m+12} - F_m = F_6 L_{m+6}


@dataclass(frozen=True)
class CaseVerdict:
    shift: int
    identity_used: Identity
    small_solutions: tuple[SolutionTriple, ...]
    large_solution_free: bool
    reasoning: str
    max_n: int


def _from_fibonacci_offset(shift: int, offset: int) -> list[SolutionTriple]:
    """Solutions of F_{m + offset} = 2^a with m >= 0, mapped to (m + shift, m, a)."""
    found = []
    for k, e in power_of_two_terms(Kind.FIBONACCI):
        m = k - offset
        if m >= 0:
            found.append(SolutionTriple(m + shift, m, e))
    return found


def residual_case(shift: int) -> CaseVerdict:
    if shift not in RESIDUAL_SHIFTS:
        raise UnsupportedShiftError(f"no residual analysis for shift {shift}")
    fib_max = max(k for k, _ in power_of_two_terms(Kind.FIBONACCI))
    lucas_max = max(k for k, _ in power_of_two_terms(Kind.LUCAS))

    if shift == 1:
        # F_{m-1} = 2^a; m = 0 uses F_{-1} = F_1 = 1
        sols = _from_fibonacci_offset(1, -1)
        if fib(-1) == 1:
            sols.append(SolutionTriple(1, 0, 0))
        identity, max_n = Identity.FM_MINUS1, fib_max + 2
        why = "F_{m+1} - F_m = F_{m-1} must be a power of two; F_k = 2^e only for k in {1,2,3,6} (and F_{-1} = 1)"
    elif shift == 2:
        sols = _from_fibonacci_offset(2, 1)
        identity, max_n = Identity.FM_PLUS1, fib_max + 1
        why = "F_{m+2} - F_m = F_{m+1} must be a power of two; F_k = 2^e only for k in {1,2,3,6}"
    elif shift == 4:
        sols = []
        for k, e in power_of_two_terms(Kind.LUCAS):
            m = k - 2
            if m >= 0:
                sols.append(SolutionTriple(m + 4, m, e))
        identity, max_n = Identity.LUCAS_VIA_1_4, lucas_max + 2
        why = "F_{m+4} - F_m = F_{m+3} + F_{m+1} = L_{m+2}; L_k = 2^e only for k in {0,1,3}"
    else:
        # F_{m+12} - F_m = F_6 L_{m+6} = 8 L_{m+6}, so a >= 3 and L_{m+6} = 2^(a-3) with m + 6 >= 6
        if difference_factorization(12, 0).left.value != 8:
            raise AssertionError("F_6 != 8")
        sols = []
        for k, e in power_of_two_terms(Kind.LUCAS):
            m = k - 6
            if m >= 0:
                sols.append(SolutionTriple(m + 12, m, e + 3))
        identity, max_n = Identity.DIFFERENCE_FACTORIZATION, lucas_max + 6
        why = ("F_{m+12} - F_m = F_6 L_{m+6} with F_6 = 8 = 2^3, so a >= 3 and L_{m+6} = 2^(a-3);"
               " L_k = 2^e only for k <= 3 < m + 6")
    sols = tuple(sorted(set(sols)))
    for t in sols:
        if not is_solution(t) or t.shift != shift:
            raise AssertionError(f"bad residual solution {t}")
    return CaseVerdict(shift, identity, sols, True, why, max_n)


def check_identities(m_max: int = 300) -> bool:
    """The four shift identities, exactly, for 1 <= m <= m_max."""
    for m in range(1, m_max + 1):
        if fib(m + 1) - fib(m) != fib(m - 1):
            return False
        if fib(m + 2) - fib(m) != fib(m + 1):
            return False
        if fib(m + 4) - fib(m) != lucas(m + 2):
            return False
        if fib(m + 12) - fib(m) != fib(6) * lucas(m + 6):
            return False
    return True


def cross_check_against_search(verdicts: Iterable[CaseVerdict], n_max: int = 200) -> bool:
    """Every residual solution is found by the search, and every searched solution with a
    residual shift appears in some verdict."""
    if n_max < 200:
        raise ValueError("n_max must be at least 200")
    verdicts = list(verdicts)
    found = set(brute_force(n_max))
    claimed = {t for v in verdicts for t in v.small_solutions}
    if not claimed <= found:
        return False
    covered = {v.shift for v in verdicts}
    for t in found:
        if t.shift in RESIDUAL_SHIFTS and (t.shift not in covered or t not in claimed):
            return False
    return covered >= set(RESIDUAL_SHIFTS)
