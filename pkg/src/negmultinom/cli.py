"""Command-line front end.

Exit codes: 0 success, 2 argument parse error, 3 invalid parameters,
4 exact mode unsupported, 5 oracle did not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .corpus import compare_golden
from .distribution import log_pmf, pmf, sample, validate_params
from .errors import ExactModeUnsupported, NegMultinomialError
from .scalar import format_scalar, to_exact, to_float
from .symbolic import derive_central_poly, derive_noncentral_poly
from .verify import SCHEMA_VERSION, formula_value, verify_moment


def _csv(kind):
    def parse(text: str):
        parts = [t.strip() for t in text.split(",")]
        if not parts or any(not t for t in parts):
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}")
        try:
            return [kind(t) for t in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    return parse


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise ValueError(f"{text!r} is negative")
    return v


def _number(text: str) -> str:
    # validated now, converted later once the numeric mode is known
    to_exact(text)
    return text


def _pos_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _pos_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negmultinom",
        description="Negative multinomial mass function, moments and formula verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def dist_args(p, exact=True):
        p.add_argument("--r", required=True, type=_number, help="dispersion r > 0")
        p.add_argument("--x", required=True, type=_csv(_number), help="probabilities x1,..,xd")
        if exact:
            p.add_argument("--exact", action="store_true", help="exact rational arithmetic")

    def fmt_arg(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("pmf", help="probability of a count vector")
    dist_args(p)
    p.add_argument("--k", required=True, type=_csv(_nonneg_int), help="counts k1,..,kd")
    p.add_argument("--log", action="store_true", help="print the natural log")
    fmt_arg(p)

    p = sub.add_parser("moment", help="closed-form moment")
    p.add_argument("--kind", required=True, choices=("noncentral", "central", "factorial"))
    dist_args(p)
    p.add_argument("--p", required=True, type=_csv(_nonneg_int), help="orders p1,..,pd")
    fmt_arg(p)

    p = sub.add_parser("derive", help="symbolic moment polynomial")
    p.add_argument("--kind", required=True, choices=("noncentral", "central"))
    p.add_argument("--p", required=True, type=_csv(_nonneg_int))
    p.add_argument("--golden", action="store_true",
                   help="also compare with the bundled corpus of published formulas")
    fmt_arg(p)

    p = sub.add_parser("sample", help="draw count vectors")
    dist_args(p, exact=False)
    p.add_argument("--n", required=True, type=_pos_int)
    p.add_argument("--seed", required=True, type=_seed)
    fmt_arg(p)

    p = sub.add_parser("verify", help="check a formula against both oracles (JSON)")
    dist_args(p, exact=False)
    p.add_argument("--p", required=True, type=_csv(_nonneg_int))
    p.add_argument("--kind", default="noncentral", choices=("noncentral", "central", "factorial"))
    p.add_argument("--tol", type=_pos_float, default=1e-10)
    p.add_argument("--mc-n", type=_pos_int, default=10**6)
    p.add_argument("--seed", type=_seed, default=0)
    return parser


def _emit(args, payload: dict, text: str, out) -> None:
    if getattr(args, "format", "json") == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **payload}) + "\n")
    else:
        out.write(text + "\n")


def _json_scalar(v):
    return v if isinstance(v, float) else format_scalar(v)


def _cmd_pmf(args, out) -> None:
    params = validate_params(args.r, args.x, exact=args.exact)
    if args.log:
        if args.exact:
            raise ExactModeUnsupported("log pmf is only available in float mode")
        v = log_pmf(params, args.k)
    else:
        v = pmf(params, args.k)
    _emit(args, {"command": "pmf", "log": args.log, "k": args.k, "value": _json_scalar(v)},
          format_scalar(v), out)


def _cmd_moment(args, out) -> None:
    params = validate_params(args.r, args.x, exact=args.exact)
    v = formula_value(params, args.p, args.kind)
    _emit(args, {"command": "moment", "kind": args.kind, "p": args.p, "value": _json_scalar(v)},
          format_scalar(v), out)


def _cmd_derive(args, out) -> None:
    if args.kind == "noncentral":
        poly = derive_noncentral_poly(args.p)
        basis = "falling_factorial"
    else:
        poly = derive_central_poly(args.p)
        basis = "r_power"
    payload = {"command": "derive", "kind": args.kind, "p": args.p, "basis": basis,
               "d": poly.d, "terms": poly.to_json()}
    text = poly.format()
    if args.golden:
        rep = compare_golden(args.p, args.kind)
        payload["golden"] = {
            "record": list(rep.pattern),
            "matched": rep.matched,
            "mismatches": [
                [{"key": [d.key[0], list(d.key[1])], "derived": d.derived, "printed": d.printed,
                  "annotated": d.key in rep.annotated} for d in group]
                for group in rep.mismatches
            ],
            "explained": rep.explained,
        }
        text = "\n".join([text, *rep.lines()])
    _emit(args, payload, text, out)


def _cmd_sample(args, out) -> None:
    params = validate_params(args.r, args.x)
    draws = sample(params, args.n, args.seed)
    if args.format == "json":
        _emit(args, {"command": "sample", "seed": args.seed, "draws": draws.tolist()}, "", out)
    else:
        out.write("".join(",".join(map(str, row)) + "\n" for row in draws.tolist()))


def _cmd_verify(args, out) -> None:
    params = validate_params(args.r, [to_float(v) for v in args.x])
    report = verify_moment(params, args.p, args.kind, args.tol, args.mc_n, args.seed)
    out.write(json.dumps(report) + "\n")


_COMMANDS = {
    "pmf": _cmd_pmf,
    "moment": _cmd_moment,
    "derive": _cmd_derive,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args, out)
    except NegMultinomialError as exc:
        err.write(f"negmultinom: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        err.write(f"negmultinom: {type(exc).__name__}: {exc}\n")
        return 3
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
