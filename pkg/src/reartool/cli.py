"""Command-line front end.

Subcommands: check-b, norm, apply, criterion, verify, interpolate-demo.
Reports are JSON by default (sorted keys, no timestamps, so identical runs
produce identical bytes); ``apply`` defaults to CSV.  Exit codes: 0 success,
1 usage or configuration error, 2 mathematical failure (a lemma violated or
a condition infinite under --require-finite), 3 degenerate space or violated
precondition.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .criteria import derived_weight, hardy_condition, sgg_condition, \
    stgg_condition, tgg_condition
from .descriptors import DescriptorError, jsonable, parse_fn, parse_profile, \
    parse_weight
from .errors import PreconditionViolated, RearToolError, TrivialSpace
from .funcspace import StepFn
from .norms import GammaSpace, gamma_norm, marcinkiewicz_norm
from .quasiconcave import b_check, b_consensus
from .supops import apply_S, apply_T
from .verify import DemoOperator, verify_endpoints, verify_interpolation, \
    verify_one_star, verify_starfalls


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt17(x: float) -> str:
    return f"{x:.17g}"


def _build_parser() -> _Parser:
    top = _Parser(prog="reartool", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(p, fmt_default="json"):
        p.add_argument("--R", default="inf",
                       help="right endpoint of the interval (number or 'inf')")
        p.add_argument("--grid", type=int, default=None,
                       help="override the default quadrature grid size")
        p.add_argument("--out", default=None, help="write the report here "
                       "instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    p = sub.add_parser("check-b", help="decide the averaging condition for a "
                       "quasiconcave profile")
    p.add_argument("--phi", required=True, help="profile descriptor "
                   "(JSON, file, or shorthand like pow:0.5)")
    p.add_argument("--method", default="consensus",
                   choices=("integral", "tilde-integral", "dilation", "consensus"))
    common(p)

    p = sub.add_parser("norm", help="Marcinkiewicz or integral-space norm of "
                       "a step function")
    p.add_argument("--space", required=True, choices=("marcinkiewicz", "gamma"))
    p.add_argument("--cfg", required=True, help="profile descriptor "
                   "(marcinkiewicz) or gamma-space descriptor")
    p.add_argument("--f", required=True, help="step-function descriptor")
    p.add_argument("--p", type=float, default=1.0,
                   help="exponent for --space gamma when --cfg is a weight")
    common(p)

    p = sub.add_parser("apply", help="evaluate a supremum operator at points")
    p.add_argument("--op", required=True, choices=("S", "T"))
    p.add_argument("--phi", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--points", required=True,
                   help="comma-separated evaluation points")
    common(p, fmt_default="csv")

    p = sub.add_parser("criterion", help="evaluate a boundedness criterion")
    p.add_argument("--kind", required=True,
                   choices=("sgg", "tgg", "stgg", "neugebauer", "ghs", "gl"))
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--phi", default=None)
    p.add_argument("--psi", default=None)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", default=None)
    p.add_argument("--require-finite", action="store_true",
                   help="exit 2 when the criterion supremum is infinite")
    common(p)

    p = sub.add_parser("verify", help="run a lemma verification")
    p.add_argument("--lemma", required=True,
                   choices=("one-star", "endpoints", "starfalls", "interpolation"))
    p.add_argument("--phi", default=None)
    p.add_argument("--psi", default=None)
    p.add_argument("--which", default="all",
                   help="sub-lemma (endpoints: T-L1,T-M,S-M,S-Linf; starfalls: "
                   "Tff,Tstar,Sstar,Sff,combined; or 'all')")
    p.add_argument("--op", default="hardy-average",
                   help="demo operator for --lemma interpolation")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--w1", default=None)
    p.add_argument("--w2", default=None)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("interpolate-demo", help="run the interpolation "
                       "showcase on the power fixture")
    p.add_argument("--op", default="hardy-average")
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--phi", default="pow:0.75")
    p.add_argument("--psi", default="pow:0.25")
    p.add_argument("--w1", default="pow:-0.5")
    p.add_argument("--w2", default="pow:-0.5")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    return top


def _resolved_config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "cmd"}
    cfg["grid"] = args.grid if args.grid is not None else \
        int(os.environ.get("REARTOOL_GRID", "2048"))
    return cfg


def _emit(args, payload: dict, csv_rows=None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise DescriptorError(
                f"subcommand {args.cmd} has no CSV representation")
        header, rows = csv_rows
        text = ",".join(header) + "\n" + "\n".join(
            ",".join(_fmt17(x) if isinstance(x, float) else str(x) for x in row)
            for row in rows) + "\n"
    else:
        doc = {"version": __version__, "schema": 1,
               "config": jsonable(_resolved_config(args)),
               "report": jsonable(payload)}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check_b(args) -> int:
    R = float(args.R) if args.R != "inf" else math.inf
    phi = parse_profile(args.phi, R=R)
    rep = (b_consensus(phi, n=args.grid) if args.method == "consensus"
           else b_check(phi, args.method, n=args.grid))
    _emit(args, rep)
    return 0


def _cmd_norm(args) -> int:
    R = float(args.R) if args.R != "inf" else math.inf
    f = parse_fn(args.f)
    if not isinstance(f, StepFn):
        raise DescriptorError("norms are computed from step-function data")
    step = f
    if args.space == "marcinkiewicz":
        phi = parse_profile(args.cfg, R=R)
        nv = marcinkiewicz_norm(phi, step)
    else:
        from .descriptors import _as_doc, parse_space
        doc = _as_doc(args.cfg, role="weight", R=R)
        if isinstance(doc, dict) and doc.get("kind") == "gamma-space":
            space = parse_space(doc, R=R)
        else:
            space = GammaSpace(args.p, parse_weight(doc, R=R))
        nv = gamma_norm(space, step)
    _emit(args, nv, csv_rows=(("value", "method", "error_bound"),
                              [(nv.value, nv.method, nv.error_bound)]))
    return 0


def _cmd_apply(args) -> int:
    import numpy as np
    R = float(args.R) if args.R != "inf" else math.inf
    phi = parse_profile(args.phi, R=R)
    f = parse_fn(args.f)
    try:
        pts = [float(s) for s in args.points.split(",") if s.strip()]
    except ValueError as e:
        raise DescriptorError(f"bad --points: {e}") from e
    if not pts or not all(0.0 < t < phi.domain.R for t in pts):
        raise DescriptorError("points must lie strictly inside (0, R)")
    res = (apply_S if args.op == "S" else apply_T)(phi, f)
    vals = np.asarray(res.fn(np.asarray(pts, dtype=float)), dtype=float)
    rows = [(float(t), float(v)) for t, v in zip(pts, vals)]
    payload = {"op": args.op, "trivial": res.trivial, "exact": res.exact,
               "points": [r[0] for r in rows], "values": [r[1] for r in rows]}
    _emit(args, payload, csv_rows=(("t", "value"), rows))
    return 0


def _cmd_criterion(args) -> int:
    R = float(args.R) if args.R != "inf" else math.inf
    w1 = parse_weight(args.w1, R=R)
    w2 = parse_weight(args.w2, R=R) if args.w2 else None
    phi = parse_profile(args.phi, R=R) if args.phi else None
    psi = parse_profile(args.psi, R=R) if args.psi else None
    kind, p, n = args.kind, args.p, args.grid
    if kind == "sgg":
        if phi is None or w2 is None:
            raise DescriptorError("sgg needs --phi and --w2")
        rep = sgg_condition(p, phi, w1, w2, n=n)
    elif kind == "tgg":
        if psi is None or w2 is None:
            raise DescriptorError("tgg needs --psi and --w2")
        rep = tgg_condition(p, psi, w1, w2, n=n)
    elif kind == "stgg":
        if phi is None or psi is None or w2 is None:
            raise DescriptorError("stgg needs --phi, --psi and --w2")
        rep = stgg_condition(p, phi, psi, w1, w2, n=n)
    elif kind == "neugebauer":
        if phi is None or w2 is None:
            raise DescriptorError("neugebauer needs --phi and --w2")
        dw = derived_weight("S", p, phi, w2, n=n)
        rep = hardy_condition("neugebauer", p, w1=w1, derived=dw, n=n)
    elif kind == "ghs":
        if w2 is None:
            raise DescriptorError("ghs needs --w2")
        rep = hardy_condition("ghs", p, w1=w1, w2=w2, psi=psi, n=n)
    else:  # gl
        if psi is None or w2 is None:
            raise DescriptorError("gl needs --psi and --w2")
        rep = hardy_condition("gl", p, w1=w1, w2=w2, psi=psi, n=n)
    _emit(args, rep)
    if args.require_finite and not rep.finite:
        return 2
    return 0


_ENDPOINT_KINDS = ("T-L1", "T-M", "S-M", "S-Linf")
_STARFALL_KINDS = ("Tff", "Tstar", "Sstar", "Sff", "combined")


def _cmd_verify(args) -> int:
    R = float(args.R) if args.R != "inf" else math.inf
    phi = parse_profile(args.phi, R=R) if args.phi else None
    psi = parse_profile(args.psi, R=R) if args.psi else None
    if args.lemma == "one-star":
        if phi is None:
            raise DescriptorError("one-star needs --phi")
        verdicts = [verify_one_star(phi, samples=args.samples, seed=args.seed)]
    elif args.lemma == "endpoints":
        if phi is None:
            raise DescriptorError("endpoints needs --phi")
        kinds = _ENDPOINT_KINDS if args.which == "all" else (args.which,)
        verdicts = [verify_endpoints(k, phi, samples=args.samples,
                                     seed=args.seed) for k in kinds]
    elif args.lemma == "starfalls":
        kinds = _STARFALL_KINDS if args.which == "all" else (args.which,)
        verdicts = [verify_starfalls(k, phi=phi, psi=psi,
                                     samples=args.samples, seed=args.seed)
                    for k in kinds]
    else:  # interpolation
        if None in (phi, psi) or not args.w1 or not args.w2:
            raise DescriptorError(
                "interpolation needs --phi, --psi, --w1 and --w2")
        w1 = parse_weight(args.w1, R=R)
        w2 = parse_weight(args.w2, R=R)
        verdicts = [verify_interpolation(DemoOperator.parse(args.op), args.p,
                                         phi, psi, w1, w2,
                                         samples=args.samples, seed=args.seed)]
    payload = {"verdicts": [v.as_dict() for v in verdicts],
               "passed": all(v.passed for v in verdicts)}
    _emit(args, payload)
    return 0 if payload["passed"] else 2


def _cmd_interpolate_demo(args) -> int:
    R = float(args.R) if args.R != "inf" else math.inf
    phi = parse_profile(args.phi, R=R)
    psi = parse_profile(args.psi, R=R)
    w1 = parse_weight(args.w1, R=R)
    w2 = parse_weight(args.w2, R=R)
    v = verify_interpolation(DemoOperator.parse(args.op), args.p, phi, psi,
                             w1, w2, samples=args.samples, seed=args.seed)
    _emit(args, v.as_dict())
    return 0 if v.passed else 2


_DISPATCH = {
    "check-b": _cmd_check_b,
    "norm": _cmd_norm,
    "apply": _cmd_apply,
    "criterion": _cmd_criterion,
    "verify": _cmd_verify,
    "interpolate-demo": _cmd_interpolate_demo,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "grid", None) is not None:
        if args.grid < 16:
            print("reartool: error: --grid must be at least 16", file=sys.stderr)
            return 1
        os.environ["REARTOOL_GRID"] = str(args.grid)
    try:
        return _DISPATCH[args.cmd](args)
    except DescriptorError as e:
        print(f"reartool: error: {e}", file=sys.stderr)
        return 1
    except (TrivialSpace, PreconditionViolated) as e:
        print(f"reartool: {e}", file=sys.stderr)
        return 3
    except RearToolError as e:
        print(f"reartool: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"reartool: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
