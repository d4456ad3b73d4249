"""End-to-end proof that F_n - F_m = 2^a has only finitely many, explicitly listed solutions.

The proof runs as a fixed sequence of stages.  Each stage is a pure function
from JSON-ready inputs to JSON-ready outputs, so a certificate can be checked
by re-running every stage on its recorded inputs, by checking that each
stage's inputs are the previous stages' outputs, and by a handful of direct
checks that do not go through the stage functions at all.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Union

from . import __version__
from .cases import RESIDUAL_SHIFTS, cross_check_against_search, residual_case
from .contfrac import expand, gamma_enclosure
from .errors import DegenerateError, FibDiffError, StageError
from .matveev import (
    ABSOLUTE_BOUND_REFERENCE,
    REFINED_BOUND_REFERENCE,
    SHIFT_COEFFICIENT_REFERENCE,
    absolute_bound,
    absolute_inequality_gap,
    absolute_inequality_slope,
    first_linear_form,
    round_up_significant,
    second_linear_form,
    shift_bound_inequality,
    side_conditions,
)
from .reduction import (
    Mu,
    ReductionProblem,
    batch_reduce,
    degeneracy_identity,
    linearize,
    reduce,
    threshold,
    w_bound_from_threshold,
)
from .rigor import DEFAULT_PRECISION, Constant, RigorousReal, eval_constant, nearest_integer_distance
from .search import SolutionTriple, brute_force, is_solution

STAGE_ORDER = (
    "brute_force",
    "exponent_bound",
    "linear_form_1",
    "shift_inequality",
    "linear_form_2",
    "absolute_bound",
    "reduction_1",
    "refined_bound",
    "reduction_2",
    "residual_cases",
    "conclusion",
)

FIRST_REDUCED_SHIFT = 3


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def encode_enclosure(x: RigorousReal) -> dict:
    return {
        "lower": str(x.lower),
        "upper": str(x.upper),
        "decimal": x.to_decimal(25),
        "precision_bits": x.precision_bits,
    }


def decode_enclosure(d: dict) -> RigorousReal:
    return RigorousReal.from_bounds(Fraction(d["lower"]), Fraction(d["upper"]), int(d["precision_bits"]),
                                    round_outward=False)


def _normalize(obj: Any) -> Any:
    return json.loads(json.dumps(obj))


def canonical_digest(cert: dict) -> str:
    meta = {k: v for k, v in cert.get("metadata", {}).items() if k != "digest"}
    body = {"stages": cert.get("stages"), "conclusion": cert.get("conclusion"), "metadata": meta}
    data = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(data.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# stage functions: inputs dict -> outputs dict
# ---------------------------------------------------------------------------

def stage_brute_force(inputs: dict, precision_bits: int) -> dict:
    sols = brute_force(int(inputs["n_max"]))
    return {"solutions": [list(t) for t in sols], "count": len(sols)}


def stage_exponent_bound(inputs: dict, precision_bits: int) -> dict:
    alpha = eval_constant(Constant.ALPHA, precision_bits)
    return {
        "chain": "2^a = F_n - F_m < F_n <= alpha^(n-1) < alpha^n < 2^n",
        "alpha": encode_enclosure(alpha),
        "alpha_below_two": alpha.upper < 2,
        "claim": "a < n, hence B = max(|a|, |-n|, 1) = n",
    }


def _side_condition_rows(inst, p: int) -> list[dict]:
    return [
        {
            "gamma": c.gamma,
            "A": str(c.A),
            "D_times_height": encode_enclosure(c.D_times_height),
            "abs_log": encode_enclosure(c.abs_log),
            "satisfied": c.satisfied,
        }
        for c in side_conditions(inst, p)
    ]


def stage_linear_form_1(inputs: dict, precision_bits: int) -> dict:
    inst = first_linear_form()
    return {
        "gammas": [str(g) for g in inst.gammas],
        "coefficients": list(inst.coeff_names),
        "A": [str(a) for a in inst.A],
        "side_conditions": _side_condition_rows(inst, precision_bits),
        "upper_estimate": "|1 - 2^a alpha^-n sqrt5| < 4 / alpha^(n-m)",
        "nonvanishing": ("if 2^a alpha^-n sqrt5 = 1 then 2^a = alpha^n/sqrt5 = F_n + beta^n/sqrt5"
                         " > F_n - 1 >= F_n - F_m = 2^a, impossible"),
    }


def stage_shift_inequality(inputs: dict, precision_bits: int) -> dict:
    report = shift_bound_inequality(int(inputs["n_min"]), precision_bits)
    return {
        "inequality": report.inequality,
        "K": encode_enclosure(report.details["K"]),
        "coefficient_enclosure": encode_enclosure(report.details["coefficient"]),
        "coefficient": str(report.resolved_bound),
        "reference_coefficient": str(report.reference_value),
        "within_reference": report.resolved_bound <= report.reference_value,
    }


def stage_linear_form_2(inputs: dict, precision_bits: int) -> dict:
    shift = int(inputs["side_condition_shift"])
    inst = second_linear_form(shift, precision_bits)
    return {
        "gammas": [str(g) for g in inst.gammas],
        "coefficients": list(inst.coeff_names),
        "A": [str(a) for a in inst.A],
        "A3_formula": "log 20 + (n-m) log(alpha), at least 2 (log(2 sqrt5) + (n-m) log(alpha)/2)",
        "side_conditions": _side_condition_rows(inst, precision_bits),
        "monotonicity": "|log gamma_3| decreases and A_3 increases with n-m, so shift 1 is the worst case",
        "upper_estimate": "|1 - 2^a alpha^-n sqrt5 (1 - alpha^(m-n))^-1| < 3 / alpha^n",
        "nonvanishing": "alpha^n/sqrt5 - alpha^m/sqrt5 = 2^a + (beta^n - beta^m)/sqrt5 != 2^a for n > m",
        "m_zero": "m = 0 means F_n = 2^a, which holds only for n in {1, 2, 3, 6}",
    }


def _bound_outputs(report) -> dict:
    bound = report.resolved_bound
    return {
        "inequality": report.inequality,
        "bound": str(bound),
        "gap_at_bound_plus_one": encode_enclosure(report.details["gap_at_bound_plus_one"]),
        "slope_at_bound_plus_one": encode_enclosure(report.details["slope_at_bound_plus_one"]),
        "M": str(round_up_significant(bound, 3)),
        "reference_bound": None if report.reference_value is None else str(report.reference_value),
    }


def stage_absolute_bound(inputs: dict, precision_bits: int) -> dict:
    report = absolute_bound(shift_coefficient=int(inputs["shift_coefficient"]), precision_bits=precision_bits)
    out = _bound_outputs(report)
    out["reference_bound"] = str(ABSOLUTE_BOUND_REFERENCE)
    return out


def _linearization_record(form) -> dict:
    return {
        "raw_amplitude": form.raw_amplitude,
        "amplitude": form.amplitude_A,
        "raw_over_log_alpha": encode_enclosure(form.checks["raw_over_log_alpha"]),
        "checks": sorted(k for k, v in form.checks.items() if v is True),
    }


def _result_record(r) -> dict:
    return {
        "q_index": r.q_index,
        "q": str(r.q),
        "epsilon": encode_enclosure(r.epsilon),
        "threshold": encode_enclosure(r.threshold),
        "w_bound": r.w_bound,
        "attempts": [{"q_index": a.q_index, "outcome": a.outcome} for a in r.attempts],
    }


def stage_reduction_1(inputs: dict, precision_bits: int) -> dict:
    form = linearize("z1", int(inputs["n_min"]), FIRST_REDUCED_SHIFT, precision_bits)
    problem = ReductionProblem(Mu(), int(inputs["M"]), form.amplitude_A, precision_bits=precision_bits)
    try:
        result = reduce(problem)
    except DegenerateError as exc:
        raise StageError("reduction_1", f"{exc} ({exc.diagnosis})") from exc
    out = {"linearization": _linearization_record(form), "mu": "homogeneous", "A": form.amplitude_A}
    out.update(_result_record(result))
    return out


def stage_refined_bound(inputs: dict, precision_bits: int) -> dict:
    report = absolute_bound(shift_cap=int(inputs["shift_cap"]), precision_bits=precision_bits)
    out = _bound_outputs(report)
    out["reference_bound"] = str(REFINED_BOUND_REFERENCE)
    return out


def stage_reduction_2(inputs: dict, precision_bits: int) -> dict:
    lo, hi = inputs["shift_range"]
    form = linearize("z2", int(inputs["n_min"]), FIRST_REDUCED_SHIFT, precision_bits)
    batch = batch_reduce(range(int(lo), int(hi) + 1), int(inputs["M"]), form.amplitude_A, precision_bits)
    per_shift = []
    for r in batch.results:
        row = {"shift": r.problem.mu.shift, "degenerate": r.degenerate}
        if r.degenerate:
            deg = degeneracy_identity(r.problem.mu.shift)
            row["diagnosis"] = r.diagnosis
            row["exact_identity"] = None if deg is None else deg.identity
        else:
            row.update(_result_record(r))
        per_shift.append(row)
    return {
        "linearization": _linearization_record(form),
        "A": form.amplitude_A,
        "per_shift": per_shift,
        "degenerate_shifts": list(batch.degenerate_shifts),
        "aggregate_w_bound": batch.aggregate_w_bound,
        "worst_shift": batch.worst_shift,
        "min_epsilon": None if batch.min_epsilon is None else encode_enclosure(batch.min_epsilon),
    }


def stage_residual_cases(inputs: dict, precision_bits: int) -> dict:
    verdicts = [residual_case(int(s)) for s in inputs["shifts"]]
    return {
        "verdicts": [
            {
                "shift": v.shift,
                "identity": v.identity_used.value,
                "small_solutions": [list(t) for t in v.small_solutions],
                "large_solution_free": v.large_solution_free,
                "max_n": v.max_n,
                "reasoning": v.reasoning,
            }
            for v in verdicts
        ],
        "cross_check": cross_check_against_search(verdicts, max(200, int(inputs["n_cutoff"]))),
    }


def stage_conclusion(inputs: dict, precision_bits: int) -> dict:
    cutoff = int(inputs["n_cutoff"])
    n_bound = int(inputs["n_bound"])
    residual_max = int(inputs["residual_max_n"])
    return {
        "n_bound": n_bound,
        "contradiction": n_bound <= cutoff and residual_max <= cutoff,
        "statement": (f"any solution with n > {cutoff} has n <= {n_bound}; "
                      f"hence every solution has n <= {cutoff} and is listed"),
        "solutions": [list(t) for t in brute_force(cutoff)],
    }


STAGE_FUNCTIONS: dict[str, Callable[[dict, int], dict]] = {
    "brute_force": stage_brute_force,
    "exponent_bound": stage_exponent_bound,
    "linear_form_1": stage_linear_form_1,
    "shift_inequality": stage_shift_inequality,
    "linear_form_2": stage_linear_form_2,
    "absolute_bound": stage_absolute_bound,
    "reduction_1": stage_reduction_1,
    "refined_bound": stage_refined_bound,
    "reduction_2": stage_reduction_2,
    "residual_cases": stage_residual_cases,
    "conclusion": stage_conclusion,
}

CLAIMS = {
    "brute_force": "all solutions with 0 <= m < n <= cutoff, by exact search",
    "exponent_bound": "a < n",
    "linear_form_1": "lower bound applies to 2^a alpha^-n sqrt5 - 1",
    "shift_inequality": "(n-m) log(alpha) < c log n for n > cutoff",
    "linear_form_2": "lower bound applies to 2^a alpha^-n sqrt5 (1 - alpha^(m-n))^-1 - 1",
    "absolute_bound": "n <= bound for any solution beyond the cutoff",
    "reduction_1": "n - m <= w_bound",
    "refined_bound": "n <= bound given n - m <= w_bound",
    "reduction_2": "n <= aggregate w_bound for every non-degenerate shift",
    "residual_cases": "shifts 1, 2, 4, 12 admit no solution beyond the cutoff",
    "conclusion": "the solution list is complete",
}


# ---------------------------------------------------------------------------
# certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StageRecord:
    name: str
    inputs: dict
    outputs: dict
    claim: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "claim": self.claim, "inputs": self.inputs, "outputs": self.outputs}


@dataclass(frozen=True)
class ProofCertificate:
    stages: tuple[StageRecord, ...]
    conclusion: tuple[SolutionTriple, ...]
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "stages": [s.to_dict() for s in self.stages],
            "conclusion": [list(t) for t in self.conclusion],
            "metadata": dict(self.metadata),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "ProofCertificate":
        stages = tuple(StageRecord(s["name"], s["inputs"], s["outputs"], s.get("claim", "")) for s in d["stages"])
        return cls(stages, tuple(SolutionTriple(*t) for t in d["conclusion"]), d["metadata"])


@dataclass(frozen=True)
class ProofConfig:
    n_cutoff: int = 200
    precision_bits: int = DEFAULT_PRECISION


def _run_stage(name: str, inputs: dict, p: int) -> StageRecord:
    try:
        outputs = STAGE_FUNCTIONS[name](inputs, p)
    except StageError:
        raise
    except FibDiffError as exc:
        raise StageError(name, str(exc)) from exc
    return StageRecord(name, _normalize(inputs), _normalize(outputs), CLAIMS[name])


def run_proof(config: ProofConfig = ProofConfig()) -> ProofCertificate:
    """Execute every stage; raise StageError if any claim cannot be certified."""
    cutoff, p = config.n_cutoff, config.precision_bits
    if cutoff < 6:
        raise ValueError("n_cutoff must be at least 6")
    stages = []

    def run(name, inputs):
        rec = _run_stage(name, inputs, p)
        stages.append(rec)
        return rec.outputs

    run("brute_force", {"n_max": cutoff})
    eb = run("exponent_bound", {})
    if not eb["alpha_below_two"]:
        raise StageError("exponent_bound", "could not certify alpha < 2")
    lf1 = run("linear_form_1", {})
    if not all(row["satisfied"] for row in lf1["side_conditions"]):
        raise StageError("linear_form_1", "A_i side conditions not certified")
    si = run("shift_inequality", {"n_min": cutoff + 1})
    lf2 = run("linear_form_2", {"side_condition_shift": 1})
    if not all(row["satisfied"] for row in lf2["side_conditions"]):
        raise StageError("linear_form_2", "A_i side conditions not certified")
    ab = run("absolute_bound", {"shift_coefficient": si["coefficient"]})
    r1 = run("reduction_1", {"M": ab["M"], "n_min": cutoff + 1})
    w1 = r1["w_bound"]
    rb = run("refined_bound", {"shift_cap": w1})
    r2 = run("reduction_2", {"M": rb["M"], "n_min": cutoff + 1, "shift_range": [FIRST_REDUCED_SHIFT, w1]})
    unexpected = sorted(set(r2["degenerate_shifts"]) - set(RESIDUAL_SHIFTS))
    if unexpected:
        raise StageError("reduction_2", f"degenerate shifts {unexpected} have no residual analysis")
    rc = run("residual_cases", {"shifts": list(RESIDUAL_SHIFTS), "n_cutoff": cutoff})
    if not rc["cross_check"]:
        raise StageError("residual_cases", "residual solutions disagree with the search")
    residual_max = max(v["max_n"] for v in rc["verdicts"])
    n_bound = r2["aggregate_w_bound"] if r2["aggregate_w_bound"] is not None else FIRST_REDUCED_SHIFT
    concl = run("conclusion", {"n_cutoff": cutoff, "n_bound": n_bound, "residual_max_n": residual_max})
    if not concl["contradiction"]:
        raise StageError("conclusion", f"reduced bound n <= {n_bound} does not undercut the cutoff {cutoff}")

    metadata = {
        "precision_bits": p,
        "n_cutoff": cutoff,
        "version": __version__,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    cert = ProofCertificate(tuple(stages), tuple(SolutionTriple(*t) for t in concl["solutions"]), metadata)
    d = cert.to_dict()
    metadata["digest"] = canonical_digest(d)
    return ProofCertificate(cert.stages, cert.conclusion, metadata)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


class _Stop(Exception):
    pass


def _naive_solutions(n_max: int) -> set[tuple[int, int, int]]:
    f = [0, 1]
    for _ in range(n_max):
        f.append(f[-1] + f[-2])
    out = set()
    for n in range(n_max + 1):
        for m in range(n):
            d, a = f[n] - f[m], 0
            while d > 1 and d % 2 == 0:
                d //= 2
                a += 1
            if d == 1:
                out.add((n, m, a))
    return out


def _check_epsilon(record: dict, M: int, mu: Mu, A: int, note: Callable[[str], None], label: str) -> None:
    q = int(record["q"])
    eps_claim = decode_enclosure(record["epsilon"])
    if not eps_claim.is_positive():
        note(f"{label}: recorded epsilon is not positive")
        return
    if q <= 6 * M:
        note(f"{label}: q = {q} does not exceed 6M")
    cf = expand(count=int(record["q_index"]) + 1)
    if cf.q(int(record["q_index"])) != q:
        note(f"{label}: q is not the convergent denominator q_{record['q_index']}")
    p = eps_claim.precision_bits
    eps = nearest_integer_distance(mu.enclosure(p) * q) - M * nearest_integer_distance(gamma_enclosure(p) * q)
    if not eps.overlaps(eps_claim):
        note(f"{label}: epsilon claim {eps_claim.to_decimal(8)} disagrees with recomputation {eps.to_decimal(8)}")
    problem = ReductionProblem(mu, M, A, precision_bits=p)
    t = threshold(problem, q, eps_claim)
    if w_bound_from_threshold(t) != record["w_bound"]:
        note(f"{label}: w_bound {record['w_bound']} does not follow from epsilon and q")


def verify_certificate(cert: Union[ProofCertificate, dict], stop_at_first: bool = False) -> VerificationReport:
    """Re-check a certificate; never raises on malformed input."""
    violations: list[str] = []

    def note(msg: str) -> None:
        violations.append(msg)
        if stop_at_first:
            raise _Stop

    try:
        _verify(cert.to_dict() if isinstance(cert, ProofCertificate) else cert, note)
    except _Stop:
        pass
    except Exception as exc:  # malformed certificates must not escape as exceptions
        violations.append(f"malformed certificate: {type(exc).__name__}: {exc}")
    return VerificationReport(not violations, violations)


def _verify(d: dict, note: Callable[[str], None]) -> None:
    if not isinstance(d, dict) or set(d) != {"stages", "conclusion", "metadata"}:
        note("top-level keys must be exactly stages, conclusion, metadata")
        return
    meta = d["metadata"]
    if meta.get("digest") != canonical_digest(d):
        note("digest mismatch: certificate content was altered")

    names = [s.get("name") for s in d["stages"]]
    if tuple(names) != STAGE_ORDER:
        note(f"stage order {names} differs from {list(STAGE_ORDER)}")
        return
    st = {s["name"]: s for s in d["stages"]}
    p = int(meta["precision_bits"])
    cutoff = int(meta["n_cutoff"])

    # recompute every stage from its recorded inputs
    for s in d["stages"]:
        if s.get("claim") != CLAIMS[s["name"]]:
            note(f"{s['name']}: claim text altered")
        try:
            expected = _normalize(STAGE_FUNCTIONS[s["name"]](s["inputs"], p))
        except FibDiffError as exc:
            note(f"{s['name']}: recomputation failed: {exc}")
            continue
        if expected != s["outputs"]:
            note(f"{s['name']}: outputs differ from recomputation")

    out = {name: st[name]["outputs"] for name in STAGE_ORDER}
    inp = {name: st[name]["inputs"] for name in STAGE_ORDER}

    # chaining: every stage consumes the previous stages' outputs
    expected_inputs = {
        "brute_force": {"n_max": cutoff},
        "exponent_bound": {},
        "linear_form_1": {},
        "shift_inequality": {"n_min": cutoff + 1},
        "linear_form_2": {"side_condition_shift": 1},
        "absolute_bound": {"shift_coefficient": out["shift_inequality"]["coefficient"]},
        "reduction_1": {"M": out["absolute_bound"]["M"], "n_min": cutoff + 1},
        "refined_bound": {"shift_cap": out["reduction_1"]["w_bound"]},
        "reduction_2": {"M": out["refined_bound"]["M"], "n_min": cutoff + 1,
                        "shift_range": [FIRST_REDUCED_SHIFT, out["reduction_1"]["w_bound"]]},
        "residual_cases": {"shifts": list(RESIDUAL_SHIFTS), "n_cutoff": cutoff},
        "conclusion": {"n_cutoff": cutoff, "n_bound": out["reduction_2"]["aggregate_w_bound"],
                       "residual_max_n": max(v["max_n"] for v in out["residual_cases"]["verdicts"])},
    }
    for name, want in expected_inputs.items():
        if inp[name] != _normalize(want):
            note(f"{name}: inputs are not the outputs of the preceding stages")

    # (a) solutions, against a naive oracle
    sols = {tuple(t) for t in d["conclusion"]}
    for t in d["conclusion"]:
        if not is_solution(SolutionTriple(*t)):
            note(f"conclusion: {t} is not a solution")
    if sols != _naive_solutions(cutoff):
        note("conclusion: solution list differs from exhaustive search")
    if [list(t) for t in d["conclusion"]] != out["conclusion"]["solutions"]:
        note("conclusion: top-level list differs from the conclusion stage")

    # side conditions and the shift coefficient
    for name in ("linear_form_1", "linear_form_2"):
        for row in out[name]["side_conditions"]:
            a = Fraction(row["A"])
            if not (a >= Fraction(16, 100) and a >= Fraction(row["D_times_height"]["upper"])
                    and a >= Fraction(row["abs_log"]["upper"])):
                note(f"{name}: side condition for {row['gamma']} fails")
    coeff = int(out["shift_inequality"]["coefficient"])
    if Fraction(out["shift_inequality"]["coefficient_enclosure"]["upper"]) > coeff:
        note("shift_inequality: coefficient below its enclosure")

    # (c) bounds: the inequality fails at bound + 1 and keeps failing beyond
    for name, kwargs in (("absolute_bound", {"shift_coefficient": coeff}),
                         ("refined_bound", {"shift_cap": int(out["reduction_1"]["w_bound"])})):
        bound = int(out[name]["bound"])
        gap = absolute_inequality_gap(bound + 1, precision_bits=p, **kwargs)
        slope = absolute_inequality_slope(bound + 1, precision_bits=p, **kwargs)
        if not (gap.is_positive() and slope.is_positive()):
            note(f"{name}: inequality not certified to fail beyond {bound}")
        if int(out[name]["M"]) < bound:
            note(f"{name}: M smaller than the certified bound")

    # (b) epsilon claims, recomputed from (q, M, mu)
    r1 = out["reduction_1"]
    _check_epsilon(r1, int(inp["reduction_1"]["M"]), Mu(), int(r1["A"]), note, "reduction_1")
    r2 = out["reduction_2"]
    M2 = int(inp["reduction_2"]["M"])
    w1 = int(r1["w_bound"])
    shifts_seen = []
    degenerate = []
    bounds = []
    for row in r2["per_shift"]:
        s = int(row["shift"])
        shifts_seen.append(s)
        if row["degenerate"]:
            degenerate.append(s)
            continue
        _check_epsilon(row, M2, Mu.shifted(s), int(r2["A"]), note, f"reduction_2 shift {s}")
        bounds.append(int(row["w_bound"]))

    # (d) shift partition and cutoff logic
    if shifts_seen != list(range(FIRST_REDUCED_SHIFT, w1 + 1)):
        note("reduction_2: shifts do not cover 3..w_bound of reduction_1")
    if degenerate != r2["degenerate_shifts"]:
        note("reduction_2: degenerate list inconsistent with per-shift rows")
    if not set(degenerate) <= set(RESIDUAL_SHIFTS):
        note("reduction_2: degenerate shift without residual analysis")
    for s in degenerate:
        if degeneracy_identity(s) is None:
            note(f"reduction_2: shift {s} marked degenerate without an exact identity")
    if bounds and max(bounds) != r2["aggregate_w_bound"]:
        note("reduction_2: aggregate is not the maximum per-shift bound")
    covered = {v["shift"] for v in out["residual_cases"]["verdicts"]}
    if covered != set(RESIDUAL_SHIFTS) or not out["residual_cases"]["cross_check"]:
        note("residual_cases: shifts 1, 2, 4, 12 not fully settled")
    for v in out["residual_cases"]["verdicts"]:
        for t in v["small_solutions"]:
            if tuple(t) not in sols:
                note(f"residual_cases: {t} missing from the conclusion")
    if not (out["conclusion"]["contradiction"] and int(out["conclusion"]["n_bound"]) <= cutoff):
        note("conclusion: reduced bound does not undercut the cutoff")
