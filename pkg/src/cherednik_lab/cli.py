"""Batch command line: identity suites and intertwiner serialization.

Exit codes: 0 all identities hold, 1 a mathematical check failed or the
parameters are non-generic where genericity is required, 2 usage error.
JSON output is stable byte-for-byte for a fixed seed (sorted keys, sorted
bases), so it can be pinned by golden files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import affine_coinvariants as ac
from . import cherednik_algebra as ca
from . import hecke_algebra as hk
from . import zhelobenko as zh
from .affine_weyl import parse_word, word_degree
from .finite_weight import check_standard_iso, n_coinvariants
from .linalg import OperatorMatrix
from .permutations import adjacent, all_perms, compose, identity, transposition
from .scalars import (
    NonGenericError,
    ParameterSet,
    Scalar,
    format_scalar,
    parse_scalar,
)

SCHEMA = "cherednik-lab/1"
SUITES = ("relations", "standard-iso", "cherednik", "thm36", "braid", "cor25")


class UsageError(ValueError):
    pass


def _parse_box(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"--box expects L..U, got {text!r}")
    return int(lo), int(hi)


def _parse_csv(text: str) -> tuple[Scalar, ...]:
    return tuple(parse_scalar(tok) for tok in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cherednik-lab",
        description="exact identity checks and intertwiner matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--N", type=int, dest="n", default=2)
        p.add_argument("--kappa", type=str, default="5/2")
        p.add_argument("--mu", type=str, default=None, help="CSV of rationals")
        p.add_argument("--lambda", type=str, dest="lam", default=None)
        p.add_argument("--nu", type=str, default=None, help="CSV of integers")
        p.add_argument("--ell", type=str, default=None,
                       help="must equal kappa - m when given")
        p.add_argument("--degree", type=int, default=0)
        p.add_argument("--box", type=str, default="-2..2", help="L..U")
        p.add_argument("--word", type=str, default="")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")

    p_verify = sub.add_parser("verify", help="run an identity suite")
    p_verify.add_argument("--suite", choices=SUITES, required=True)
    common(p_verify)

    p_int = sub.add_parser("intertwiner", help="print an intertwiner chain")
    common(p_int)
    return parser


def _params_from_args(args) -> ParameterSet:
    kappa = parse_scalar(args.kappa)
    if args.ell is not None and parse_scalar(args.ell) != kappa - args.m:
        raise UsageError(
            f"--ell must equal kappa - m = {kappa - args.m}, got {args.ell}"
        )
    mu = _parse_csv(args.mu) if args.mu else _default_mu(args.m)
    if len(mu) != args.m:
        raise UsageError(f"--mu needs {args.m} entries")
    if (args.lam is None) == (args.nu is None):
        raise UsageError("give exactly one of --lambda and --nu")
    if args.nu is not None:
        nu = tuple(int(tok) for tok in args.nu.split(","))
        if len(nu) != args.m or any(v < 0 for v in nu) or sum(nu) != args.n:
            raise UsageError(f"--nu must be a composition of N={args.n}")
        lam = tuple(x + v for x, v in zip(mu, nu))
    else:
        lam = _parse_csv(args.lam)
    try:
        return ParameterSet(args.m, args.n, kappa, mu, lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _default_mu(m: int) -> tuple[Scalar, ...]:
    samples = (Fraction(0), Fraction(1, 3), Fraction(5, 7), Fraction(9, 11))
    if m > len(samples):
        raise UsageError("give --mu explicitly for m > 4")
    return samples[:m]


def _weights_json(fw: ParameterSet) -> dict:
    return {
        "kappa": format_scalar(fw.kappa),
        "ell": format_scalar(fw.ell),
        "lambda": [format_scalar(x) for x in fw.lam],
        "mu": [format_scalar(x) for x in fw.mu],
    }


def _basis_json(box: ac.BoxBasis) -> list:
    return [{"a": list(a), "i": list(i)} for (a, i) in box.keys]


def _matrix_json(op: OperatorMatrix) -> list:
    return [[format_scalar(x) for x in row] for row in op.to_dense()]


def cmd_intertwiner(args) -> int:
    fw = _params_from_args(args)
    lo, hi = _parse_box(args.box)
    try:
        word = parse_word(args.word, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        fw.require_generic()
        box = ac.BoxBasis.build(fw, args.degree, lo, hi)
        chain = zh.build_intertwiner(word, fw, box)
    except NonGenericError as exc:
        print(f"non-generic parameters: {exc}", file=sys.stderr)
        return 1
    payload = {
        "schema": SCHEMA,
        "command": "intertwiner",
        "word": args.word,
        "degree": word_degree(word),
        "box": {"lo": lo, "hi": hi, "degree": args.degree,
                "content": list(fw.nu)},
        "parameters": _weights_json(fw),
        "steps": [
            {
                "letter": step.letter,
                "source_weights": _weights_json(step.source_fw),
                "target_weights": _weights_json(step.target_fw),
                "source_basis": _basis_json(step.source_box),
                "target_basis": _basis_json(step.target_box),
                "matrix": _matrix_json(step.op),
            }
            for step in chain.steps
        ],
        "composite": {
            "source_basis": _basis_json(chain.source_box),
            "target_basis": _basis_json(chain.target_box),
            "matrix": _matrix_json(chain.composite),
        },
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"word: {args.word or '(empty)'}")
        for step in chain.steps:
            print(f"step {step.letter}: {step.source_fw.mu} -> {step.target_fw.mu}")
        for row in _matrix_json(chain.composite):
            print("  ".join(row))
    return 0


def _random_hecke(rng: random.Random, n: int, max_terms: int = 2) -> hk.HeckeElement:
    perms = list(all_perms(n))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.choice(perms)
        k = tuple(rng.randint(0, 1) for _ in range(n))
        terms[(w, k)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return hk.HeckeElement(n, terms)


def _random_cherednik(
    rng: random.Random, n: int, kappa: Scalar, max_terms: int = 2
) -> ca.CherednikElement:
    perms = list(all_perms(n))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        v = tuple(rng.randint(-1, 1) for _ in range(n))
        w = rng.choice(perms)
        k = tuple(rng.randint(0, 1) for _ in range(n))
        terms[(v, w, k)] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return ca.CherednikElement(n, kappa, terms)


def suite_relations(fw: ParameterSet, seed: int, checks: list) -> None:
    n, kappa = fw.n, fw.kappa
    rng = random.Random(seed)

    def rec(name, el) -> None:
        checks.append((name, el.is_zero(),
                       None if el.is_zero() else "nonzero normal form"))

    for p in range(1, n):
        sp = hk.group_element(adjacent(n, p))
        for q in range(1, n + 1):
            lhs = hk.multiply(sp, hk.u_gen(n, q))
            if q == p:
                rhs = hk.multiply(hk.u_gen(n, p + 1), sp) - hk.one(n)
            elif q == p + 1:
                rhs = hk.multiply(hk.u_gen(n, p), sp) + hk.one(n)
            else:
                rhs = hk.multiply(hk.u_gen(n, q), sp)
            rec(f"H: s_{p} u_{q}", lhs - rhs)
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            upq = hk.multiply(hk.u_gen(n, p), hk.u_gen(n, q))
            uqp = hk.multiply(hk.u_gen(n, q), hk.u_gen(n, p))
            rec(f"H: [u_{p}, u_{q}]", upq - uqp)
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p == q:
                continue
            zp, zq = hk.z_element(n, p), hk.z_element(n, q)
            comm = hk.multiply(zp, zq) - hk.multiply(zq, zp)
            spq = hk.group_element(transposition(n, p, q))
            rec(f"H: [z_{p}, z_{q}]", comm - hk.multiply(spq, zp - zq))
    for _ in range(200):
        a, b, c = (_random_hecke(rng, n) for _ in range(3))
        lhs = hk.multiply(hk.multiply(a, b), c)
        rhs = hk.multiply(a, hk.multiply(b, c))
        if not (lhs - rhs).is_zero():
            checks.append(("H: associativity", False, hk.format_element(a)))
            break
    else:
        checks.append(("H: associativity x200", True, None))

    for p in range(1, n + 1):
        zp = ca.c_z(n, kappa, p)
        for q in range(1, n + 1):
            xq = ca.x_gen(n, kappa, q)
            comm = ca.multiply_c(zp, xq) - ca.multiply_c(xq, zp)
            if q != p:
                want = ca.multiply_c(
                    ca.x_gen(n, kappa, p),
                    ca.c_group(transposition(n, p, q), kappa),
                ).scale(-1)
            else:
                want = xq.scale(kappa)
                for r in range(1, n + 1):
                    if r != p:
                        want = want + ca.multiply_c(
                            ca.x_gen(n, kappa, p),
                            ca.c_group(transposition(n, p, r), kappa),
                        )
            rec(f"C: [z_{p}, x_{q}]", comm - want)
        xinv = ca.x_gen(n, kappa, p, -1)
        rec(
            f"C: x_{p} x_{p}^-1",
            ca.multiply_c(ca.x_gen(n, kappa, p), xinv) - ca.cone(n, kappa),
        )
    conj_perms = list(all_perms(n)) if n <= 3 else [
        adjacent(n, p) for p in range(1, n)
    ]
    for w in conj_perms:
        gw = ca.c_group(w, kappa)
        for p in range(1, n + 1):
            lhs = ca.multiply_c(gw, ca.x_gen(n, kappa, p))
            rhs = ca.multiply_c(ca.x_gen(n, kappa, w[p - 1] + 1), gw)
            rec(f"C: conj x_{p}", lhs - rhs)
    for _ in range(200):
        a, b, c = (_random_cherednik(rng, n, kappa) for _ in range(3))
        lhs = ca.multiply_c(ca.multiply_c(a, b), c)
        rhs = ca.multiply_c(a, ca.multiply_c(b, c))
        if not (lhs - rhs).is_zero():
            checks.append(("C: associativity", False, ca.format_element_c(a)))
            break
    else:
        checks.append(("C: associativity x200", True, None))


def suite_standard_iso(fw: ParameterSet, seed: int, checks: list) -> None:
    for variant in ("gl", "sl"):
        space = n_coinvariants(fw.m, fw.n, fw.mu, fw.lam)
        report = check_standard_iso(space, fw, variant)
        checks.append(
            (
                f"standard iso ({variant})",
                report.passed,
                None if report.passed else "; ".join(report.details)
                or f"dim {report.dim_found} != {report.dim_expected}",
            )
        )


def suite_cherednik(fw: ParameterSet, args, checks: list) -> None:
    lo, hi = _parse_box(args.box)
    box = ac.BoxBasis.build(fw, args.degree, lo, hi)
    bigbox = ac.BoxBasis.build(fw, args.degree + 1, lo, hi + 1)
    for p in range(1, fw.n + 1):
        closed = ac.theta_matrix(p, box, fw)
        literal = ac.theta_matrix_via_reduction(p, box, fw)
        ok = closed.same_mapping(literal)
        checks.append(
            (f"theta_{p} dual path", ok,
             None if ok else repr(closed.first_discrepancy(literal)))
        )
        theta_big = ac.theta_matrix(p, bigbox, fw)
        for q in range(1, fw.n + 1):
            xop = ac.x_operator(q, box, bigbox)
            comm = theta_big.compose(xop).sub(
                xop.compose(ac.theta_matrix(p, box, fw))
            )
            if q != p:
                want = ac.x_operator(p, box, bigbox).compose(
                    ac.perm_operator(transposition(fw.n, p, q), box)
                ).scale(-1)
            else:
                want = xop.scale(fw.kappa)
                for r in range(1, fw.n + 1):
                    if r != p:
                        want = want.add(
                            ac.x_operator(p, box, bigbox).compose(
                                ac.perm_operator(
                                    transposition(fw.n, p, r), box
                                )
                            )
                        )
            ok = comm.same_mapping(want)
            checks.append(
                (f"[theta_{p}, x_{q}] on box", ok,
                 None if ok else repr(comm.first_discrepancy(want)))
            )


def suite_thm36(fw: ParameterSet, args, checks: list) -> None:
    lo, hi = _parse_box(args.box)
    box = ac.BoxBasis.build(fw, args.degree, lo, hi)
    for c in range(fw.m):
        report = zh.verify_intertwining(f"t{c}", fw, box)
        checks.append(
            (f"eta_{c} intertwines", report.passed,
             None if report.passed else repr(report.first_failure))
        )
    report = zh.verify_intertwining("pi", fw, box)
    checks.append(
        ("pi intertwines (shifted)", report.passed,
         None if report.passed else repr(report.first_failure))
    )


def suite_braid(fw: ParameterSet, args, checks: list) -> None:
    lo, hi = _parse_box(args.box)
    box = ac.BoxBasis.build(fw, args.degree, lo, hi)
    report = zh.verify_braid(fw, box, seed=args.seed)
    for name, ok, witness in report.checks:
        checks.append((name, ok, witness))


def suite_cor25(fw: ParameterSet, args, checks: list) -> None:
    lo, hi = _parse_box(args.box)
    box = ac.BoxBasis.build(fw, args.degree, lo, hi)
    op, box2, fw2 = ac.pi_operator(box, fw)
    for p in range(1, fw.n + 1):
        lhs = ac.theta_matrix(p, box2, fw2).compose(op).sub(
            op.compose(ac.theta_matrix(p, box, fw))
        )
        want = op.scale(-Fraction(fw.kappa, fw.m))
        ok = lhs.same_mapping(want)
        checks.append(
            (f"pi twist theta_{p}", ok,
             None if ok else repr(lhs.first_discrepancy(want)))
        )


def cmd_verify(args) -> int:
    fw = _params_from_args(args)
    checks: list = []
    try:
        if args.suite == "relations":
            suite_relations(fw, args.seed, checks)
        elif args.suite == "standard-iso":
            suite_standard_iso(fw, args.seed, checks)
        elif args.suite == "cherednik":
            fw.require_generic()
            suite_cherednik(fw, args, checks)
        elif args.suite == "thm36":
            fw.require_generic()
            suite_thm36(fw, args, checks)
        elif args.suite == "braid":
            fw.require_generic()
            suite_braid(fw, args, checks)
        elif args.suite == "cor25":
            suite_cor25(fw, args, checks)
    except NonGenericError as exc:
        print(f"non-generic parameters: {exc}", file=sys.stderr)
        return 1
    passed = all(ok for (_, ok, _) in checks)
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": args.suite,
        "seed": args.seed,
        "passed": passed,
        "checks": [
            {"name": name, "passed": ok, "witness": witness}
            for (name, ok, witness) in checks
        ],
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for name, ok, witness in checks:
            mark = "PASS" if ok else f"FAIL ({witness})"
            print(f"{name}: {mark}")
        print(f"suite {args.suite}: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_intertwiner(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
