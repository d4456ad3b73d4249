"""Command line entry point: prove, verify, search, cf, reduce."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .contfrac import MAX_TERMS, expand
from .errors import DegenerateError, FibDiffError, StageError
from .matveev import absolute_bound, round_up_significant, shift_bound_inequality
from .pipeline import FIRST_REDUCED_SHIFT, ProofConfig, run_proof, verify_certificate
from .reduction import Mu, ReductionProblem, degeneracy_identity, linearize, reduce
from .rigor import DEFAULT_PRECISION, MAX_PRECISION
from .search import brute_force

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fibdiff", description="Solve F_n - F_m = 2^a with a checkable certificate.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="run the full proof and write a certificate")
    p.add_argument("--nmax", type=_positive_int, default=200, help="search cutoff n <= NMAX (default 200)")
    p.add_argument("--precision", type=_positive_int, default=DEFAULT_PRECISION, help="working precision in bits")
    p.add_argument("--out", default="certificate.json", help="certificate path ('-' for stdout)")

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("file")

    p = sub.add_parser("search", help="list all solutions with n <= NMAX")
    p.add_argument("--nmax", type=_positive_int, required=True)

    p = sub.add_parser("cf", help="partial quotients and convergents of log 2 / log(alpha)")
    p.add_argument("--terms", type=_positive_int, default=20)

    p = sub.add_parser("reduce", help="run one reduction step with diagnostics")
    p.add_argument("--stage", type=int, choices=(1, 2), required=True)
    p.add_argument("--shift", type=_positive_int, help="shift n - m (stage 2 only)")
    p.add_argument("--nmax", type=_positive_int, default=200, help="search cutoff")
    p.add_argument("--precision", type=_positive_int, default=DEFAULT_PRECISION)
    return parser


def _cmd_prove(args) -> int:
    if args.nmax < 6:
        print("error: --nmax must be at least 6", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = run_proof(ProofConfig(n_cutoff=args.nmax, precision_bits=args.precision))
    except StageError as exc:
        print(f"proof failed at stage {exc.stage}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = cert.to_json()
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"certificate written to {args.out}")
    print(f"{len(cert.conclusion)} solutions; digest {cert.metadata['digest']}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = verify_certificate(data)
    if report:
        print("certificate verified")
        return EXIT_OK
    for v in report.violations:
        print(f"violation: {v}")
    return EXIT_FAIL


def _cmd_search(args) -> int:
    if args.nmax < 2:
        print("error: --nmax must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    for t in brute_force(args.nmax):
        print(f"({t.n}, {t.m}, {t.a})")
    return EXIT_OK


def _cmd_cf(args) -> int:
    if args.terms > MAX_TERMS:
        print(f"error: --terms must be at most {MAX_TERMS}", file=sys.stderr)
        return EXIT_USAGE
    cf = expand(count=args.terms)
    print(f"# certified at {cf.precision_bits} bits")
    print("k\ta_k\tp_k\tq_k")
    for k, (a, (p, q)) in enumerate(zip(cf.quotients, cf.convergents)):
        print(f"{k}\t{a}\t{p}\t{q}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    p = args.precision
    n_min = args.nmax + 1
    coefficient = shift_bound_inequality(n_min, p).resolved_bound
    M1 = round_up_significant(absolute_bound(shift_coefficient=coefficient, precision_bits=p).resolved_bound)
    form1 = linearize("z1", n_min, FIRST_REDUCED_SHIFT, p)
    if args.stage == 1:
        if args.shift is not None:
            print("error: --shift applies to stage 2 only", file=sys.stderr)
            return EXIT_USAGE
        problem = ReductionProblem(Mu(), M1, form1.amplitude_A, precision_bits=p)
    else:
        if args.shift is None:
            print("error: stage 2 needs --shift", file=sys.stderr)
            return EXIT_USAGE
        w1 = reduce(ReductionProblem(Mu(), M1, form1.amplitude_A, precision_bits=p)).w_bound
        M2 = round_up_significant(absolute_bound(shift_cap=w1, precision_bits=p).resolved_bound)
        form2 = linearize("z2", n_min, FIRST_REDUCED_SHIFT, p)
        problem = ReductionProblem(Mu.shifted(args.shift), M2, form2.amplitude_A, precision_bits=p)
    print(f"mu = {problem.mu.tag()}  M = {problem.M}  A = {problem.A}")
    try:
        r = reduce(problem)
    except DegenerateError as exc:
        print(f"degenerate: {exc}")
        if exc.diagnosis:
            print(f"diagnosis: {exc.diagnosis}")
        deg = degeneracy_identity(args.shift) if args.shift else None
        if deg is not None:
            print(f"exact identity: {deg.identity}")
        for a in exc.attempts:
            print(f"  q_{a.q_index} = {a.q}: {a.outcome}")
        return EXIT_OK
    for a in r.attempts:
        print(f"  q_{a.q_index} = {a.q}: {a.outcome}")
    print(f"q_{r.q_index} = {r.q}")
    print(f"epsilon in [{r.epsilon.to_decimal(12)} +/- {float(r.epsilon.radius):.2e}]")
    print(f"threshold = {r.threshold.to_decimal(12)}")
    print(f"w_bound = {r.w_bound}")
    return EXIT_OK


COMMANDS = {"prove": _cmd_prove, "verify": _cmd_verify, "search": _cmd_search, "cf": _cmd_cf, "reduce": _cmd_reduce}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "precision", DEFAULT_PRECISION) > MAX_PRECISION or getattr(args, "precision", 64) < 64:
        print(f"error: --precision must lie in [64, {MAX_PRECISION}]", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except FibDiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


cli = main
