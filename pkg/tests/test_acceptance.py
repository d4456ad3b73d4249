"""Acceptance criteria 1-10; each test prints one PASS/FAIL line."""

import contextlib
import io
import json
import time
from fractions import Fraction

import pytest

from fibdiff.cases import RESIDUAL_SHIFTS, cross_check_against_search, residual_case
from fibdiff.cli import main
from fibdiff.contfrac import expand
from fibdiff.heights import height, named, rational
from fibdiff.matveev import absolute_bound, shift_bound_inequality
from fibdiff.quadratic import QSqrt5
from fibdiff.reduction import Mu, ReductionProblem, batch_reduce, epsilon, reduce
from fibdiff.rigor import Constant, eval_constant, pow_int
from fibdiff.search import SolutionTriple
from fibdiff.sequences import binet_residual, difference_factorization, fib, lucas

M1_REF = 291 * 10**26
M2_REF = 76 * 10**14


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_01_solution_set(report, known_solutions):
    start = time.perf_counter()
    code, out = run_cli(["search", "--nmax", "200"])
    elapsed = time.perf_counter() - start
    got = [SolutionTriple(*map(int, line.strip("()").split(","))) for line in out.strip().splitlines()]
    ok = code == 0 and got == sorted(known_solutions) and elapsed < 1
    report(1, ok, f"{len(got)} triples, sorted={got == sorted(got)}, {elapsed:.3f}s")


def test_criterion_02_heights(report):
    values = [height(rational(2, 1)), height(named("alpha")), height(named("sqrt5"))]
    targets = [0.6931, 0.2406, 0.8047]
    ok = all(abs(float(h) - t) < 1e-4 for h, t in zip(values, targets))
    report(2, ok, ", ".join(h.to_decimal(8) for h in values))


def test_criterion_03_shift_inequality(report):
    r = shift_bound_inequality(201)
    ok = r.resolved_bound <= 24 * 10**11
    report(3, ok, f"certified coefficient {r.resolved_bound} (reference 2.4e12)")


def test_criterion_04_absolute_bounds(report):
    own_coefficient = shift_bound_inequality(201).resolved_bound
    timings, bounds = [], {}
    for label, kwargs in (("reference coefficient", {"shift_coefficient": 24 * 10**11}),
                          ("own coefficient", {"shift_coefficient": own_coefficient}),
                          ("shift cap 146", {"shift_cap": 146})):
        start = time.perf_counter()
        bounds[label] = absolute_bound(**kwargs).resolved_bound
        timings.append(time.perf_counter() - start)
    ok = (bounds["reference coefficient"] <= Fraction(291 * 10**26) * Fraction(105, 100)
          and bounds["own coefficient"] <= bounds["reference coefficient"]
          and bounds["shift cap 146"] <= Fraction(756 * 10**13) * Fraction(105, 100)
          and max(timings) < 10)
    detail = "; ".join(f"{k}: {v:.4e}" for k, v in bounds.items()) + f"; max {max(timings):.2f}s"
    report(4, ok, detail)


def test_criterion_05_continued_fraction(report):
    cf = expand(count=80)
    big = [k for k in range(63, 66) if cf.q(k) > 6 * M1_REF]
    small = [k for k in range(43, 46) if cf.q(k) > 6 * M2_REF]
    det = all(cf.p(k) * cf.q(k - 1) - cf.p(k - 1) * cf.q(k) in (1, -1) for k in range(1, len(cf)))
    first_big = next(k for k in range(len(cf)) if cf.q(k) > 6 * M1_REF)
    ok = bool(big) and bool(small) and det
    report(5, ok, f"k in [63,65] with q_k > 6*2.91e28: {big} (first such k is {first_big}); "
                  f"k' in [43,45]: {small}; determinant identity {det}")


def test_criterion_06_first_reduction(report, certificate):
    cf = expand(count=80)
    eps64 = epsilon(ReductionProblem(Mu(), M1_REF, 50), 64, cf.q(64))
    stated = reduce(ReductionProblem(Mu(), M1_REF, 50), cf)
    own = certificate.stages[6].outputs
    ok = eps64.lower >= Fraction(18, 100) and stated.w_bound <= 160 and own["w_bound"] <= 160
    report(6, ok, f"eps(q_64) = {eps64.to_decimal(6)}; stated inputs: q_{stated.q_index}, "
                  f"threshold {stated.threshold.to_decimal(7)}, w_bound {stated.w_bound}; "
                  f"certified chain: w_bound {own['w_bound']} (target 146)")


def test_criterion_07_second_reduction(report):
    cf = expand(count=80)
    start = time.perf_counter()
    b = batch_reduce(range(3, 147), M2_REF, 13, cf=cf)
    elapsed = time.perf_counter() - start
    min_eps = b.min_epsilon
    ok = (b.degenerate_shifts == (4, 12) and min_eps.lower >= Fraction(49, 100)
          and b.aggregate_w_bound <= 200 and elapsed < 120)
    report(7, ok, f"degenerate {list(b.degenerate_shifts)}; min eps {min_eps.to_decimal(6)} "
                  f"(needs >= 0.49); n-bound {b.aggregate_w_bound} at shift {b.worst_shift} "
                  f"(target 98); {elapsed:.2f}s")


def test_criterion_08_degeneracy_identities(report):
    a, r5 = QSqrt5.alpha(), QSqrt5.sqrt5()
    four = r5 / (1 - a ** -4) == a ** 2
    twelve = r5 / (1 - a ** -12) == a ** 6 / 8
    p = 512
    g = eval_constant(Constant.LOG2, p) / eval_constant(Constant.LOG_ALPHA, p)
    mu12 = (Mu.shifted(12).enclosure(p) - (6 - 3 * g)).contains(0)
    report(8, four and twelve and mu12, f"shift 4: {four}; shift 12: {twelve}; mu_12 = 6 - 3 gamma: {mu12}")


def test_criterion_09_residual_cases(report):
    verdicts = {s: residual_case(s) for s in RESIDUAL_SHIFTS}
    ok = (verdicts[4].small_solutions == (SolutionTriple(5, 1, 2),)
          and verdicts[12].small_solutions == ()
          and all(v.large_solution_free for v in verdicts.values())
          and cross_check_against_search(list(verdicts.values()), 200))
    report(9, ok, "; ".join(f"shift {s}: {[tuple(t) for t in v.small_solutions]}" for s, v in verdicts.items()))


def _property_suites() -> bool:
    alpha = eval_constant(Constant.ALPHA, 1024)
    for k in range(1, 501):
        if not binet_residual(k, 1024 + 2 * k).contains(0):
            return False
        if not pow_int(alpha, k - 2).upper <= fib(k) <= pow_int(alpha, k - 1).lower:
            return False
        if fib(k + 1) + fib(k - 1) != lucas(k):
            return False
    for n in range(1, 101):
        for m in range(n % 2, n, 2):
            if difference_factorization(n, m).product != fib(n) - fib(m):
                return False
    for tag in Constant:
        lo, hi = eval_constant(tag, 128), eval_constant(tag, 256)
        if not (lo.overlaps(hi) and hi.radius < lo.radius):
            return False
    return True


def test_criterion_10_end_to_end(report, tmp_path):
    path = tmp_path / "cert.json"
    code, _ = run_cli(["prove", "--nmax", "200", "--precision", "256", "--out", str(path)])
    verified, _ = run_cli(["verify", str(path)])
    data = json.loads(path.read_text())

    from fibdiff.pipeline import verify_certificate

    def tampered():
        stack = [((), data)]
        while stack:
            path_, node = stack.pop()
            items = node.items() if isinstance(node, dict) else enumerate(node) if isinstance(node, list) else None
            if items is None:
                yield path_
                continue
            for k, v in items:
                stack.append((path_ + (k,), v))

    caught = total = 0
    for leaf_path in tampered():
        d = json.loads(json.dumps(data))
        node = d
        for key in leaf_path[:-1]:
            node = node[key]
        v = node[leaf_path[-1]]
        node[leaf_path[-1]] = (not v) if isinstance(v, bool) else v + 1 if isinstance(v, int) else \
            0 if v is None else v + "0"
        total += 1
        caught += not verify_certificate(d, stop_at_first=True)
    props = _property_suites()
    ok = code == 0 and verified == 0 and caught == total and props
    report(10, ok, f"prove exit {code}; verify exit {verified}; tampered leaves rejected {caught}/{total}; "
                   f"property suites {props}")
