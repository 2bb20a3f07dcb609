"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 bad arguments.
Human-readable output goes to stdout, diagnostics to stderr; ``--json``
switches stdout to machine output.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .classifier import classification_summary, enumerate_classes, equivalent, invariant_profile
from .f_symbols import FSymbolError, build_fstore
from .modular import ModularDataError, closed_form_modular, compute_modular, pivotal_from_sign, solve_pivotal
from .mutation import apply_mutation
from .numtheory import eisenstein_jacobi, gauss_sum_closed_form, jacobi, quadratic_gauss_sum
from .params import InvalidParams, Params, all_params, params_problem, valid_r
from .r_symbols import build_rstore
from .verifier import (
    DEFAULT_TOL,
    check_appendix_identities,
    check_hexagon,
    check_orthogonality,
    check_pentagon,
    jacobi_det_product,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _sign(text: str) -> int:
    if text in ("1", "+1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text!r}")


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError(f"tolerance must be a positive number, got {text!r}")
    return v


def _add_params(sp: argparse.ArgumentParser, *, lam: bool = True) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--kappa", type=_sign, default=1)
    if lam:
        sp.add_argument("--lambda", dest="lam", type=_sign, default=1)


def _params(args) -> Params:
    problem = params_problem(args.p, args.r, args.kappa, getattr(args, "lam", 1))
    if problem:
        raise UsageError(problem)
    return Params(args.p, args.r, args.kappa, getattr(args, "lam", 1))


def _print_json(obj) -> None:
    sys.stdout.write(serialize.dumps(obj))


def _representative(P: Params) -> tuple[int, int]:
    for rep in enumerate_classes(P.p):
        if equivalent(rep, (P.r, P.kappa), P.p):
            return rep
    raise AssertionError("no representative found")  # pragma: no cover


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    P = _params(args)
    fstore = build_fstore(P)
    rstore = build_rstore(P, fstore.ring)
    md = compute_modular(fstore, rstore, tol=args.tolerance)
    text = serialize.dumps(serialize.model_to_dict(fstore, rstore, md))
    if args.out:
        Path(args.out).write_text(text)
    rep = _representative(P)
    summary = {
        "labels": fstore.ring.size,
        "f_matrices": len(fstore.table),
        "representative": {"r": rep[0], "kappa": rep[1]},
        "out": args.out,
    }
    if args.json:
        _print_json(summary if args.out else serialize.model_to_dict(fstore, rstore, md))
    else:
        if not args.out:
            sys.stdout.write(text)
        else:
            print(f"wrote {args.out}: {summary['labels']} labels, {summary['f_matrices']} F-matrices, "
                  f"class representative (r={rep[0]}, kappa={rep[1]:+d})")
    return EXIT_OK


def _verify_one(P: Params, args):
    fstore = build_fstore(P)
    rstore = build_rstore(P, fstore.ring)
    if args.mutate:
        try:
            fstore, rstore = apply_mutation(args.mutate, fstore, rstore)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad --mutate: {exc}") from None
    reports = [check_orthogonality(fstore, args.tolerance)]
    if P.lam == 1:
        reports.append(check_pentagon(fstore, args.tolerance, args.jobs))
    reports.append(check_hexagon(fstore, rstore, args.tolerance, args.jobs))
    if args.appendix and P.lam == 1:
        reports.append(check_appendix_identities(P.p, P.r, P.kappa, tolerance=args.tolerance))
    return fstore.ring, reports


def cmd_verify(args) -> int:
    if args.p < 1:
        raise UsageError(f"p must be >= 1 (got {args.p})")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1 (got {args.jobs})")
    scope = all_params(args.p, with_lambda=True) if args.all else [_params(args)]
    results = []
    ok = True
    for P in scope:
        ring, reports = _verify_one(P, args)
        ok &= all(r.passed for r in reports)
        results.append((P, ring, reports))
    if args.json:
        _print_json({
            "passed": ok,
            "tolerance": args.tolerance,
            "runs": [
                {
                    "params": {"p": P.p, "r": P.r, "kappa": P.kappa, "lambda": P.lam},
                    "reports": [r.to_dict(ring) for r in reports],
                }
                for P, ring, reports in results
            ],
        })
    else:
        print(f"{'p':>3} {'r':>3} {'kappa':>5} {'lambda':>6}  {'check':<13} {'equations':>10} {'max residual':>13}  result")
        for P, ring, reports in results:
            for rep in reports:
                status = "ok" if rep.passed else f"FAIL ({len(rep.violations)})"
                print(f"{P.p:>3} {P.r:>3} {P.kappa:>+5d} {P.lam:>+6d}  {rep.name:<13} "
                      f"{rep.equations_checked:>10} {rep.max_residual:>13.3e}  {status}")
                for eq, labels, res in rep.violations[:5]:
                    names = ",".join(ring.name(x) for x in labels) if rep.name != "identities" else labels
                    print(f"      {eq} [{names}] residual {res:.3e}")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    if args.p < 1:
        raise UsageError(f"p must be >= 1 (got {args.p})")
    summary = classification_summary(args.p)
    for rep in summary["representatives"]:
        prof = invariant_profile(Params(args.p, rep["r"], rep["kappa"]))
        rep["x_tuple"] = [float(x) for x in prof.x_tuple]
    consistent = summary["count"] == summary["count_formula"]
    if args.json:
        _print_json(summary)
    else:
        fac = " * ".join(f"{q}^{e}" if e > 1 else q for q, e in summary["factorization"].items())
        print(f"p = {args.p}, 2p+1 = {summary['n']} = {fac}")
        print("square orbits: " + "  ".join("{" + ",".join(map(str, o)) + "}" for o in summary["orbits"]))
        for rep in summary["representatives"]:
            xs = ", ".join(f"{x:.6f}" for x in rep["x_tuple"])
            print(f"  r={rep['r']:<4} kappa={rep['kappa']:+d}  X=({xs})")
        print(f"{summary['count']} classes (counting formula: {summary['count_formula']})")
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_modular(args) -> int:
    P = _params(args)
    fstore = build_fstore(P)
    rstore = build_rstore(P, fstore.ring)
    ring = fstore.ring
    pivot = pivotal_from_sign(ring, args.pivot) if args.pivot else None
    if pivot is not None and pivot not in solve_pivotal(fstore, args.tolerance):
        raise ModularDataError("requested pivotal structure does not solve the pivotal equations")
    md = compute_modular(fstore, rstore, pivot, args.tolerance)
    closed = closed_form_modular(P, md.pivotal.psi_sign)
    deviation = {
        "qdims": float(np.max(np.abs(md.qdims - closed.qdims))),
        "S": float(np.max(np.abs(md.s - closed.s))),
        "T": float(np.max(np.abs(md.t - closed.t))),
    }
    labels = [ring.name(a) for a in ring.labels]
    if args.csv:
        out = Path(args.csv)
        out.mkdir(parents=True, exist_ok=True)
        (out / "S.csv").write_text(serialize.matrix_csv(labels, md.s))
        (out / "T.csv").write_text(serialize.diagonal_csv(labels, md.t))
    if args.json:
        payload = serialize.modular_to_dict(ring, md)
        payload["labels"] = labels
        payload["closed_form_deviation"] = deviation
        _print_json(payload)
    else:
        print("pivotal: " + " ".join(f"{n}:{e:+d}" for n, e in zip(labels, md.pivotal.eps)))
        print("qdims:   " + " ".join(f"{n}:{q:.6g}" for n, q in zip(labels, md.qdims)))
        print("twists (theta = exp(i pi x)):")
        for n, z in zip(labels, md.t):
            print(f"  {n:<6} x = {np.angle(z) / np.pi % 2:.6f}")
        print("S:")
        width = max(len(x) for x in labels)
        for n, row in zip(labels, md.s):
            print(f"  {n:<{width}} " + " ".join(f"{z.real:9.4f}" for z in row))
        print("max deviation from closed forms: " + ", ".join(f"{k} {v:.2e}" for k, v in deviation.items()))
    return EXIT_OK


def cmd_jacobi(args) -> int:
    if args.det is not None:
        p = args.det
        if p < 1:
            raise UsageError(f"p must be >= 1 (got {p})")
        rows = []
        for r in valid_r(p):
            value = jacobi_det_product(p, r)
            rows.append({"r": r, "det_product": value, "jacobi": jacobi(r, 2 * p + 1),
                         "ok": abs(value - jacobi(r, 2 * p + 1)) <= args.tolerance})
        ok = all(x["ok"] for x in rows)
        if args.json:
            _print_json({"p": p, "n": 2 * p + 1, "rows": rows, "passed": ok})
        else:
            for x in rows:
                print(f"r={x['r']:<4} det H det G = {x['det_product']:+.12f}  ({x['r']}|{2 * p + 1}) = {x['jacobi']:+d}")
            print("PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_FAIL
    if args.j is None or args.n is None:
        raise UsageError("jacobi needs J N, or --det P")
    if args.n < 1 or args.n % 2 == 0:
        raise UsageError(f"n must be a positive odd integer (got {args.n})")
    value = jacobi(args.j, args.n)
    result = {"j": args.j, "n": args.n, "jacobi": value}
    if math.gcd(args.j, args.n) == 1 and args.n >= 3:
        result["eisenstein"] = eisenstein_jacobi(args.j, args.n)
    if args.json:
        _print_json(result)
    else:
        print(f"({args.j}|{args.n}) = {value}")
    return EXIT_OK


def cmd_gauss(args) -> int:
    if args.n < 3 or args.n % 2 == 0:
        raise UsageError(f"n must be an odd integer >= 3 (got {args.n})")
    if math.gcd(args.r, args.n) != 1:
        raise UsageError(f"r must be coprime to n (got r={args.r}, n={args.n})")
    direct = quadratic_gauss_sum(args.r, args.n)
    closed = gauss_sum_closed_form(args.r, args.n)
    ok = abs(direct - closed) <= args.tolerance
    if args.json:
        _print_json({"r": args.r, "n": args.n, "sum": serialize._c(direct),
                     "closed_form": serialize._c(closed), "passed": ok})
    else:
        print(f"sum_l exp(-2 pi i {args.r} l^2/{args.n}) = {direct.real:+.12f} {direct.imag:+.12f}i")
        print(f"eps_n sqrt(n) (-r|n)            = {closed.real:+.12f} {closed.imag:+.12f}i")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output on stdout")
    common.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOL)

    parser = _Parser(prog="metaplectic", description="Metaplectic fusion and modular data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("generate", parents=[common], help="write a complete model file")
    _add_params(sp)
    sp.add_argument("--out", help="output path (default: model JSON on stdout)")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", parents=[common], help="pentagon, hexagon and orthogonality checks")
    _add_params(sp)
    sp.add_argument("--all", action="store_true", help="every valid (r, kappa, lambda) for this p")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--mutate", help="inject a fault: F:a,b,c,d:row,col or R:a,b,c")
    sp.add_argument("--appendix", action="store_true", help="also check the Gauss-sum identity suite")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", parents=[common], help="equivalence classes for a given p")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("modular", parents=[common], help="quantum dimensions, S and T")
    _add_params(sp)
    sp.add_argument("--pivot", type=_sign, help="pivotal sign of psi+- (default: kappa)")
    sp.add_argument("--csv", metavar="DIR", help="also write S.csv and T.csv into DIR")
    sp.set_defaults(func=cmd_modular)

    sp = sub.add_parser("jacobi", parents=[common], help="Jacobi symbol, or the determinant identity")
    sp.add_argument("j", type=int, nargs="?")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--det", type=int, metavar="P", help="check det H det G = (r|2P+1) for all r")
    sp.set_defaults(func=cmd_jacobi)

    sp = sub.add_parser("gauss", parents=[common], help="quadratic Gauss sum vs closed form")
    sp.add_argument("r", type=int)
    sp.add_argument("n", type=int)
    sp.set_defaults(func=cmd_gauss)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FSymbolError, ModularDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
