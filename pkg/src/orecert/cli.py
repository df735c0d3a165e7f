"""Command surface: verify, resolve, check, example4.

Exit codes: 0 every certification passed, 1 a certification failed (the
report carries the witness), 2 the input was invalid.  All output is
deterministic; --json swaps the human-readable report for structured text.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import check_associativity, verify_automorphism, verify_sigma_derivation
from .example4 import Example4Params, cross_validate, preset_spec
from .homology import (
    ConstructionError,
    LiftError,
    build_tau_B_chain,
    check_exactness,
    lift_through,
    standard_truncated_resolution,
    twisted_product_complex,
)
from .io import SpecError, load_spec, parse_spec, read_complex, write_complex
from .modules import RejectedCompat, build_tau_BM, verify_compatibility, verify_phi
from .report import Report
from .shuffle import verify_truncation_conditions
from .twist import RejectedTwist, build_tau, twisted_algebra, verify_twisting_axioms

EXIT_PASS, EXIT_FAIL, EXIT_BAD_INPUT = 0, 1, 2


def _merge(master: Report, sub: Report, prefix):
    for c in sub.checks:
        master.add(f"{prefix}: {c.name}", c.ok, c.witness)


def _emit(report: Report, as_json, extras=None, exit_code=None):
    code = exit_code if exit_code is not None else (EXIT_PASS if report.passed else EXIT_FAIL)
    if as_json:
        payload = report.to_dict()
        payload["exit_code"] = code
        if extras:
            payload.update(extras)
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in report.lines():
            print(line)
        if extras:
            for k, v in extras.items():
                print(f"{k}: {v}")
        print("RESULT: " + ("PASS" if code == EXIT_PASS else "FAIL"))
    return code


def _bad_input(message, as_json):
    if as_json:
        print(json.dumps({"error": message, "exit_code": EXIT_BAD_INPUT},
                         sort_keys=True, separators=(",", ":")))
    else:
        print(f"error: {message}", file=sys.stderr)
    return EXIT_BAD_INPUT


def _load(args):
    if args.spec:
        return load_spec(args.spec)
    if args.preset:
        if args.p is None:
            raise SpecError("--p", "required with --preset")
        return parse_spec(preset_spec(args.preset, args.p, q=args.q))
    raise SpecError("spec", "give a spec file or --preset")


def _verify_pipeline(ps):
    """The full twisting-map certification chain on a parsed spec."""
    rep = Report("twisting map certification")
    _merge(rep, verify_automorphism(ps.A, ps.sigma), "sigma")
    if not rep.passed:
        return rep, None
    _merge(rep, verify_sigma_derivation(ps.A, ps.sigma, ps.delta), "delta")
    if not rep.passed:
        return rep, None
    _merge(rep, verify_truncation_conditions(ps.sigma, ps.delta, ps.n), "truncation")
    if not rep.passed:
        return rep, None
    tau = build_tau(ps.A, ps.sigma, ps.delta, ps.n)
    _merge(rep, verify_twisting_axioms(tau), "twist")
    if not rep.passed:
        return rep, None
    T = twisted_algebra(ps.A, tau.B, tau)
    _merge(rep, check_associativity(T.product), "product")
    if ps.module is not None and rep.passed:
        m = ps.module
        _merge(rep, verify_phi(m["action_A"], m["phi"], ps.sigma, ps.field), "module phi")
        if rep.passed:
            cm = build_tau_BM(ps.A, m["action_A"], m["f"], m["phi"], ps.n)
            _merge(rep, verify_compatibility(cm, tau), "module")
    return rep, (tau, T)


def cmd_verify(args):
    try:
        ps = _load(args)
    except (SpecError, ValueError) as exc:
        return _bad_input(str(exc), args.json)
    try:
        rep, _ = _verify_pipeline(ps)
    except (RejectedTwist, RejectedCompat) as exc:
        rep = Report("twisting map certification")
        rep.add(str(exc), False, getattr(exc, "witness", None))
    return _emit(rep, args.json)


def cmd_resolve(args):
    try:
        ps = _load(args)
        if args.degree < 1:
            raise SpecError("--degree", "must be >= 1")
    except (SpecError, ValueError) as exc:
        return _bad_input(str(exc), args.json)
    try:
        rep, built = _verify_pipeline(ps)
        if not rep.passed:
            return _emit(rep, args.json)
        tau, T = built
        F = ps.field
        P = standard_truncated_resolution(F, ps.A.dim, args.degree)
        P_N = standard_truncated_resolution(F, ps.n, args.degree)
        sch = lift_through(P, P, F.array([[1]]), ps.sigma)
        dch = lift_through(P, P, F.zeros((1, 1)), ps.sigma, ps.delta)
        tb = build_tau_B_chain(P, sch, dch, ps.n, tau)
        X = twisted_product_complex(T, P, P_N, tb)
        FC = X.free_complex()
        _merge(rep, X.certificate, "complex")
        _merge(rep, FC.verify(), "exported complex")
        _merge(rep, check_exactness(FC, args.degree), "exactness")
    except (RejectedTwist, RejectedCompat, ConstructionError, LiftError) as exc:
        rep = Report("resolution")
        rep.add(str(exc), False, getattr(exc, "witness", None))
        return _emit(rep, args.json)
    extras = {"ranks": FC.ranks}
    if not rep.passed:
        return _emit(rep, args.json, extras)
    if args.out:
        write_complex(FC, args.out)
        extras["out"] = args.out
    return _emit(rep, args.json, extras)


def cmd_check(args):
    try:
        FC = read_complex(args.complex)
        through = args.exact_through if args.exact_through is not None else FC.top
        if not 1 <= through <= FC.top:
            raise SpecError("--exact-through", f"must be in [1, {FC.top}]")
    except SpecError as exc:
        return _bad_input(str(exc), args.json)
    rep = Report("complex re-certification")
    _merge(rep, FC.verify(), "complex")
    _merge(rep, check_exactness(FC, through), "exactness")
    return _emit(rep, args.json, {"ranks": FC.ranks})


def cmd_example4(args):
    try:
        if args.preset:
            if args.preset != "nichols":
                raise ValueError("example4 supports only the 'nichols' preset")
            if args.p is None:
                raise ValueError("--p is required with --preset")
            spec = preset_spec("nichols", args.p)
            params = Example4Params(
                p=args.p, t=spec["delta"]["t"], alpha=int(spec["delta"]["alpha"])
            )
        else:
            if args.p is None or args.t is None or args.alpha is None:
                raise ValueError("--p, --t and --alpha are required without --preset")
            params = Example4Params(p=args.p, t=args.t, alpha=args.alpha)
    except ValueError as exc:
        return _bad_input(str(exc), args.json)
    try:
        rep = cross_validate(params, args.degree)
    except (RejectedTwist, ConstructionError, LiftError) as exc:
        rep = Report("closed forms vs generic machinery")
        rep.add(str(exc), False, getattr(exc, "witness", None))
    extras = {"p": params.p, "t": params.t, "alpha": params.alpha, "degree": args.degree}
    return _emit(rep, args.json, extras)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="orecert",
        description="Certify truncated Ore extensions and their twisted resolutions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def spec_source(sp):
        sp.add_argument("spec", nargs="?", help="spec file (JSON)")
        sp.add_argument("--preset", choices=["nichols", "quantum"],
                        help="named configuration instead of a spec file")
        sp.add_argument("--p", type=int, help="characteristic for --preset")
        sp.add_argument("--q", type=int, default=1, help="scalar for the quantum preset")

    sp = sub.add_parser("verify", help="certify the twisting map and twisted product")
    spec_source(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("resolve", help="build and export a certified resolution")
    spec_source(sp)
    sp.add_argument("--degree", type=int, default=4, help="top homological degree")
    sp.add_argument("--out", help="write the complex file here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("check", help="re-certify a complex file")
    sp.add_argument("complex", help="complex file (JSON)")
    sp.add_argument("--exact-through", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("example4", help="closed forms vs generic machinery")
    sp.add_argument("--p", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--preset", choices=["nichols"])
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_example4)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
