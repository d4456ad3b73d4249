"""One-dimensional Baker-Davenport reduction in the Dujella-Petho form.

Let q > 6M be a convergent denominator of gamma and put
eps = ||mu q|| - M ||gamma q||.  If eps > 0, then 0 < |u gamma - v + mu| < A B^-w
has no solution with 0 < u <= M and w >= log(A q / eps) / log B.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .contfrac import ContinuedFraction, expand, first_q_exceeding, gamma_enclosure
from .errors import DegenerateError, PrecisionCeilingError, RegimeError
from .quadratic import QSqrt5
from .rigor import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    Constant,
    Ordering,
    RigorousReal,
    eval_constant,
    log,
    nearest_integer_distance,
    resolve_compare,
)
from .sequences import fib, is_power_of_two

MAX_ATTEMPTS = 5
# guard bits on top of bits(M) + bits(q) when evaluating M ||gamma q||
_EPS_GUARD = 64


# ---------------------------------------------------------------------------
# the inhomogeneous term
# ---------------------------------------------------------------------------

class MuKind(str, enum.Enum):
    HOMOGENEOUS = "homogeneous"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class Mu:
    """mu = log(sqrt 5)/log(alpha), or log(sqrt5 (1 - alpha^-s)^-1)/log(alpha) for a shift s."""

    kind: MuKind = MuKind.HOMOGENEOUS
    shift: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MuKind(self.kind))
        if self.kind is MuKind.SHIFTED and (self.shift is None or self.shift < 1):
            raise ValueError("shifted mu needs a positive shift")

    @classmethod
    def shifted(cls, s: int) -> "Mu":
        return cls(MuKind.SHIFTED, s)

    def enclosure(self, precision_bits: int) -> RigorousReal:
        p = precision_bits
        log_alpha = eval_constant(Constant.LOG_ALPHA, p)
        if self.kind is MuKind.HOMOGENEOUS:
            return eval_constant(Constant.LOG_SQRT5, p) / log_alpha
        alpha = eval_constant(Constant.ALPHA, p)
        inner = eval_constant(Constant.SQRT5, p) / (1 - alpha ** (-self.shift))
        return log(inner) / log_alpha

    def tag(self) -> str:
        return "homogeneous" if self.kind is MuKind.HOMOGENEOUS else f"shifted:{self.shift}"

    @classmethod
    def from_tag(cls, tag: str) -> "Mu":
        if tag == "homogeneous":
            return cls()
        kind, _, s = tag.partition(":")
        if kind != "shifted":
            raise ValueError(f"unknown mu tag {tag!r}")
        return cls.shifted(int(s))


@dataclass(frozen=True)
class Degeneracy:
    """An exact relation mu = integer_part - gamma_coefficient * gamma."""

    shift: int
    integer_part: int
    gamma_coefficient: int
    identity: str


def degeneracy_identity(shift: int) -> Optional[Degeneracy]:
    """Detect shifts where mu_shifted lies in Z + Z gamma, proved in exact Q(sqrt 5).

    For s = 2k with k even, alpha^(2k) - 1 = sqrt5 F_k alpha^k, so
    sqrt5 (1 - alpha^-s)^-1 = alpha^k / F_k.  When F_k = 2^e this gives
    mu = k - e gamma.  Odd k yields alpha^k sqrt5 / L_k instead, which keeps the
    log(sqrt 5) term and is not degenerate.
    """
    if shift % 4:
        return None
    k = shift // 2
    f = fib(k)
    if not is_power_of_two(f):
        return None
    alpha = QSqrt5.alpha()
    lhs = QSqrt5.sqrt5() / (1 - alpha ** (-shift))
    rhs = alpha ** k / f
    if lhs != rhs:
        raise AssertionError(f"exact identity failed for shift {shift}")
    e = f.bit_length() - 1
    rhs_text = f"alpha^{k}" if f == 1 else f"alpha^{k}/{f}"
    return Degeneracy(shift, k, e, f"sqrt5/(1-alpha^-{shift}) = {rhs_text}")


# ---------------------------------------------------------------------------
# problems and results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionProblem:
    """Exclude 0 < |u gamma - v + mu| < A B^-w for u <= M and large w (B = alpha)."""

    mu: Mu
    M: int
    A: Fraction
    B: Constant = Constant.ALPHA
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        if self.A <= 0:
            raise ValueError("A must be positive")
        if self.M < 1:
            raise ValueError("M must be a positive integer")
        if not eval_constant(self.B, 64).lower > 1:
            raise ValueError("B must exceed 1")


@dataclass(frozen=True)
class Attempt:
    q_index: int
    q: int
    epsilon: Optional[RigorousReal]
    outcome: str  # "positive", "negative" or "undecided"


@dataclass(frozen=True)
class ReductionResult:
    problem: ReductionProblem
    q_index: Optional[int]
    q: Optional[int]
    epsilon: Optional[RigorousReal]
    threshold: Optional[RigorousReal]
    w_bound: Optional[int]
    degenerate: bool
    attempts: tuple[Attempt, ...] = ()
    diagnosis: str = ""


def epsilon_precision(M: int, q: int, base_bits: int = DEFAULT_PRECISION) -> int:
    return base_bits + M.bit_length() + q.bit_length() + _EPS_GUARD


def epsilon(problem: ReductionProblem, q_index: int, q: int,
            max_precision_bits: int = MAX_PRECISION) -> RigorousReal:
    """Enclosure of ||mu q|| - M ||gamma q|| whose sign is certified.

    Raises PrecisionCeilingError when the sign stays unresolved at the ceiling.
    """
    p = epsilon_precision(problem.M, q, problem.precision_bits)
    while True:
        g = gamma_enclosure(p)
        mu = problem.mu.enclosure(p)
        eps = nearest_integer_distance(mu * q) - problem.M * nearest_integer_distance(g * q)
        if eps.is_positive() or eps.is_negative():
            return eps
        if p >= max_precision_bits:
            raise PrecisionCeilingError(
                f"sign of epsilon undecided at {p} bits for q_{q_index} (suspected degeneracy)")
        p = min(2 * p, max_precision_bits)


def threshold(problem: ReductionProblem, q: int, eps: RigorousReal) -> RigorousReal:
    """log(A q / eps) / log B, using the lower endpoint of eps."""
    p = eps.precision_bits
    ratio = RigorousReal.exact(problem.A * q / eps.lower, p)
    return log(ratio) / log(eval_constant(problem.B, p))


def w_bound_from_threshold(t: RigorousReal) -> int:
    """Largest integer w not excluded, i.e. w < threshold."""
    return math.ceil(t.upper) - 1


def _ensure_terms(cf: Optional[ContinuedFraction], count: int) -> ContinuedFraction:
    if cf is None or len(cf) < count:
        return expand(count=count)
    return cf


def reduce(problem: ReductionProblem, cf: Optional[ContinuedFraction] = None,
           max_attempts: int = MAX_ATTEMPTS) -> ReductionResult:
    """Apply the reduction with the first convergent q > 6M, retrying later convergents.

    Raises DegenerateError when no attempt certifies eps > 0.
    """
    cf = _ensure_terms(cf, 70)
    k0, _ = first_q_exceeding(cf, 6 * problem.M)
    cf = _ensure_terms(cf, k0 + max_attempts + 1)
    attempts = []
    for k in range(k0, k0 + max_attempts):
        q = cf.q(k)
        try:
            eps = epsilon(problem, k, q)
        except PrecisionCeilingError:
            attempts.append(Attempt(k, q, None, "undecided"))
            continue
        if eps.is_positive():
            attempts.append(Attempt(k, q, eps, "positive"))
            t = threshold(problem, q, eps)
            return ReductionResult(problem, k, q, eps, t, w_bound_from_threshold(t), False, tuple(attempts))
        attempts.append(Attempt(k, q, eps, "negative"))

    diagnosis = f"epsilon not certifiably positive for q_{k0}..q_{k0 + max_attempts - 1}"
    if problem.mu.kind is MuKind.SHIFTED:
        deg = degeneracy_identity(problem.mu.shift)
        if deg is not None:
            mu_text = str(deg.integer_part)
            if deg.gamma_coefficient:
                mu_text += f" - {deg.gamma_coefficient} gamma"
            diagnosis += (f"; exact identity {deg.identity} gives mu = {mu_text}, so ||mu q|| <= "
                          f"{deg.gamma_coefficient} ||gamma q|| < M ||gamma q|| and epsilon < 0 for every q")
    raise DegenerateError(f"reduction degenerate for mu = {problem.mu.tag()}", diagnosis, attempts)


@dataclass(frozen=True)
class BatchReduction:
    results: tuple[ReductionResult, ...]
    aggregate_w_bound: Optional[int]
    degenerate_shifts: tuple[int, ...]
    min_epsilon: Optional[RigorousReal]
    worst_shift: Optional[int] = None


def batch_reduce(shifts: Iterable[int], M: int, A, precision_bits: int = DEFAULT_PRECISION,
                 cf: Optional[ContinuedFraction] = None) -> BatchReduction:
    """Reduce every shift with mu_shifted(s); degenerate shifts are collected, not raised."""
    shifts = list(shifts)
    if shifts and (min(shifts) < 1 or max(shifts) > 10**4):
        raise ValueError("shifts must lie in [1, 10^4]")
    cf = _ensure_terms(cf, 80)
    results = []
    degenerate = []
    for s in shifts:
        problem = ReductionProblem(Mu.shifted(s), M, A, precision_bits=precision_bits)
        try:
            results.append(reduce(problem, cf))
        except DegenerateError as exc:
            degenerate.append(s)
            results.append(ReductionResult(problem, None, None, None, None, None, True,
                                           tuple(exc.attempts), exc.diagnosis))
    good = [r for r in results if not r.degenerate]
    if not good:
        return BatchReduction(tuple(results), None, tuple(degenerate), None)
    worst = max(good, key=lambda r: r.w_bound)
    smallest = min(good, key=lambda r: r.epsilon.lower)
    return BatchReduction(tuple(results), worst.w_bound, tuple(degenerate), smallest.epsilon,
                          worst.problem.mu.shift)


# ---------------------------------------------------------------------------
# from |1 - e^z| bounds to |z| bounds
# ---------------------------------------------------------------------------

class Which(str, enum.Enum):
    Z1 = "z1"
    Z2 = "z2"


@dataclass(frozen=True)
class LinearizedForm:
    """|u gamma - v + mu| < amplitude_A * alpha^-w after dividing by log(alpha)."""

    which: Which
    amplitude_A: int
    raw_amplitude: int
    exponent_role: str
    checks: dict = field(default_factory=dict)


def linearize(which, n_min: int = 201, shift_min: int = 3,
              precision_bits: int = DEFAULT_PRECISION) -> LinearizedForm:
    """Turn |1 - e^z| < c alpha^-w into |z| / log(alpha) < A alpha^-w with an integer A.

    z1: |1 - e^z1| < 4 alpha^-(n-m) < 0.95 and z1 < 0 give e^|z1| < 20, so |z1| < 80 alpha^-(n-m).
    z2: |1 - e^z2| < 3 alpha^-n < 1/2 gives e^|z2| < 2, so |z2| < 6 alpha^-n.
    """
    which = Which(which)
    p = precision_bits

    def alpha_pow(k):
        return lambda bits: eval_constant(Constant.ALPHA, bits) ** k

    checks = {}
    beta_abs = lambda bits: -eval_constant(Constant.BETA, bits)
    # |beta|^n + |beta|^m < 2/3 for n >= n_min and m >= 1
    tail = lambda bits: beta_abs(bits) ** n_min + beta_abs(bits)
    if resolve_compare(tail, RigorousReal.exact(Fraction(2, 3)), start_precision_bits=p) is not Ordering.LESS:
        raise RegimeError(f"|beta|^n + |beta|^m < 2/3 fails at n = {n_min}")
    checks["beta_tail_below_two_thirds"] = True

    if which is Which.Z1:
        if shift_min < 1:
            raise RegimeError("shift must be positive")
        lhs = lambda bits: 4 / alpha_pow(shift_min)(bits)
        if resolve_compare(lhs, RigorousReal.exact(Fraction(95, 100)), start_precision_bits=p) is not Ordering.LESS:
            raise RegimeError(f"4/alpha^{shift_min} < 0.95 fails")
        checks["four_over_alpha_shift_below_0.95"] = True
        # 1 - e^z1 < 0.95 with z1 < 0 gives e^-z1 < 1/0.05
        raw = 4 * 20
        role = "shift n-m"
    else:
        lhs = lambda bits: 3 / alpha_pow(n_min)(bits)
        if resolve_compare(lhs, RigorousReal.exact(Fraction(1, 2)), start_precision_bits=p) is not Ordering.LESS:
            raise RegimeError(f"3/alpha^{n_min} < 1/2 fails")
        checks["three_over_alpha_n_below_half"] = True
        raw = 3 * 2
        role = "full n"
    scaled = raw / eval_constant(Constant.LOG_ALPHA, p)
    amplitude = math.ceil(scaled.upper)
    checks["raw_over_log_alpha"] = scaled
    return LinearizedForm(which, amplitude, raw, role, checks)
