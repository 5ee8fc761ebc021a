"""Command-line front end. JSON output is one document with ``"schema": "1"``."""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import Sequence

from . import absval, correspondence, spectra, suites
from .errors import OstrowskiError, TrivialityNotRefuted
from .exact_arith import factorize, ord_p, parse_ext

SCHEMA = "1"
DEFAULT_MAX_STAGE = 60
MAX_BUDGET = 10**6
INT_LIMIT = 1 << 64


class UsageError(Exception):
    pass


def _max_stage() -> int:
    raw = os.environ.get("OSTROWSKI_MAX_STAGE")
    if raw is None:
        return DEFAULT_MAX_STAGE
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"OSTROWSKI_MAX_STAGE must be an integer, got {raw!r}") from None


def _int_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if abs(v) >= INT_LIMIT:
        raise argparse.ArgumentTypeError(f"|{v}| must be below 2**64")
    return v


def _nat_arg(text: str) -> int:
    v = _int_arg(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {v}")
    return v


def _ext_arg(text: str):
    try:
        return parse_ext(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational or -inf: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stage", type=_nat_arg, default=20)
    common.add_argument("--budget", type=_nat_arg, default=100)
    common.add_argument("--seed", type=_int_arg, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")

    kind = argparse.ArgumentParser(add_help=False)
    kind.add_argument("--kind", choices=("trivial", "euclid", "padic", "pchar", "power"), required=True)
    kind.add_argument("--p", type=_int_arg)
    kind.add_argument("--lambda", dest="lam", type=_ext_arg)
    kind.add_argument("--inner", choices=("euclid", "padic"))

    parser = argparse.ArgumentParser(prog="ostrowski", description="Absolute values on the integers, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, kind], help="upper bound of |n| at a stage")
    p.add_argument("--n", type=_int_arg, required=True)
    sub.add_parser("classify", parents=[common, kind], help="(ideal, lambda) of an absolute value")
    p = sub.add_parser("reconstruct", parents=[common], help="absolute value of a pair (ideal, lambda)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--lambda", dest="lam", type=_ext_arg, required=True)
    p.add_argument("--n", type=_int_arg, action="append", default=[])
    p = sub.add_parser("roundtrip", parents=[common, kind], help="both round trips for one kind")
    p.add_argument("--window", type=_nat_arg, default=50)
    sub.add_parser("classify-q", parents=[common, kind], help="place of Q of a closed form")
    p = sub.add_parser("factor", parents=[common], help="prime factorization")
    p.add_argument("n", type=_int_arg)
    p = sub.add_parser("ord", parents=[common], help="p-adic ordinal")
    p.add_argument("p", type=_int_arg)
    p.add_argument("n", type=_int_arg)
    p = sub.add_parser("extract-prime", parents=[common], help="generator of the ideal of a gcd")
    p.add_argument("elements", type=_int_arg, nargs="+")
    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("name", choices=suites.SUITES)
    return parser


def _closed_form(args) -> absval.ClosedForm:
    k = args.kind
    if k in ("trivial", "euclid"):
        if args.p is not None or args.lam is not None or args.inner is not None:
            raise UsageError(f"--kind {k} takes no --p, --lambda or --inner")
        return absval.Trivial() if k == "trivial" else absval.Euclid()
    if k in ("padic", "pchar"):
        if args.p is None:
            raise UsageError(f"--kind {k} needs --p")
        return absval.Padic(args.p) if k == "padic" else absval.PChar(args.p)
    if args.inner is None or args.lam is None:
        raise UsageError("--kind power needs --inner and --lambda")
    if args.inner == "padic":
        if args.p is None:
            raise UsageError("--inner padic needs --p")
        inner = absval.Padic(args.p)
    else:
        if args.p is not None:
            raise UsageError("--inner euclid takes no --p")
        inner = absval.Euclid()
    return absval.Power(inner, args.lam)


def _validate(args) -> None:
    limit = _max_stage()
    if args.stage > limit:
        raise UsageError(f"--stage {args.stage} exceeds {limit} (set OSTROWSKI_MAX_STAGE to raise it)")
    if args.budget > MAX_BUDGET:
        raise UsageError(f"--budget {args.budget} exceeds {MAX_BUDGET}")
    if getattr(args, "kind", None) is not None:
        try:
            args.closed_form = _closed_form(args)
        except OstrowskiError as exc:
            raise UsageError(str(exc)) from None
    if args.command == "reconstruct":
        try:
            args.ideal_value = spectra.parse_ideal(args.ideal)
        except OstrowskiError as exc:
            raise UsageError(str(exc)) from None
    if args.command == "ord" and args.n == 0:
        raise UsageError("ord_p(0) is infinite")
    if args.command == "extract-prime" and 0 in args.elements:
        raise UsageError("extract-prime elements must be nonzero")


# -- commands --------------------------------------------------------------


def _value_entry(av: absval.AbsValue, n: int, stage: int) -> dict:
    entry = {"n": str(n), "value_upper": str(av.eval(n, stage))}
    if av.descriptor is not None:
        d = absval.dedekindize(av, n)
        if d.value is not None:
            entry["value_exact"] = str(d.value)
        else:
            lo, hi = d.interval(stage)
            entry["interval"] = [str(lo), str(hi)]
    return entry


def cmd_eval(args) -> tuple[int, dict]:
    cf = args.closed_form
    av = absval.make_standard(cf)
    out = {"kind": absval.closed_form_to_json(cf), "stage": args.stage}
    out.update(_value_entry(av, args.n, args.stage))
    return 0, out


def cmd_classify(args) -> tuple[int, dict]:
    cf = args.closed_form
    point = correspondence.classify(absval.make_standard(cf), args.budget, args.stage)
    out = {"kind": absval.closed_form_to_json(cf), "stage": args.stage, "budget": args.budget}
    out.update(point.to_json(args.stage))
    return 0, out


def cmd_reconstruct(args) -> tuple[int, dict]:
    av = correspondence.reconstruct(args.ideal_value, args.lam)
    out = {
        "ideal": str(args.ideal_value),
        "lambda": str(args.lam),
        "stage": args.stage,
        "values": [_value_entry(av, n, args.stage) for n in args.n],
    }
    return 0, out


def cmd_roundtrip(args) -> tuple[int, dict]:
    cf = args.closed_form
    report = correspondence.roundtrip_z(cf, args.budget, args.stage, (-args.window, args.window))
    out = {"kind": absval.closed_form_to_json(cf), "report": report.to_json()}
    return (0 if report.passed else 1), out


def cmd_classify_q(args) -> tuple[int, dict]:
    cf = args.closed_form
    out = {"kind": absval.closed_form_to_json(cf), "stage": args.stage, "budget": args.budget}
    try:
        place = correspondence.classify_q(absval.make_standard(cf), args.budget, args.stage)
    except TrivialityNotRefuted as exc:
        out.update({"result": "triviality-not-refuted", "budget": exc.budget})
        return 1, out
    out["result"] = "place"
    out.update(correspondence.place_to_json(place, args.stage))
    return 0, out


def cmd_factor(args) -> tuple[int, dict]:
    if args.n == 0:
        return 1, {"n": "0", "error": "ZeroInputError", "message": "0 has no prime factorization"}
    return 0, {"n": str(args.n), "factors": [[str(p), str(e)] for p, e in factorize(args.n)]}


def cmd_ord(args) -> tuple[int, dict]:
    return 0, {"p": str(args.p), "n": str(args.n), "ord": str(ord_p(args.p, args.n))}


def cmd_extract_prime(args) -> tuple[int, dict]:
    result = spectra.extract_prime(args.elements)
    out: dict = {"elements": [str(e) for e in args.elements]}
    if isinstance(result, spectra.Principal):
        out.update({"result": "principal", "p": str(result.p)})
        return 0, out
    if isinstance(result, spectra.Ambiguous):
        out.update({"result": "ambiguous", "candidates": [str(c) for c in result.candidates]})
        return 0, out
    out["result"] = "contradiction"
    return 1, out


def cmd_suite(args) -> tuple[int, dict]:
    rows = suites.run_suite(args.name, args.stage, args.budget, args.seed)
    ok = all(r.ok for r in rows)
    out = {
        "suite": args.name,
        "stage": args.stage,
        "budget": args.budget,
        "seed": args.seed,
        "verdict": "pass" if ok else "fail",
        "results": [r.to_json() for r in rows],
    }
    return (0 if ok else 1), out


COMMANDS = {
    "eval": cmd_eval,
    "classify": cmd_classify,
    "reconstruct": cmd_reconstruct,
    "roundtrip": cmd_roundtrip,
    "classify-q": cmd_classify_q,
    "factor": cmd_factor,
    "ord": cmd_ord,
    "extract-prime": cmd_extract_prime,
    "suite": cmd_suite,
}


# -- output ----------------------------------------------------------------


def _text(doc, indent: str = "") -> list[str]:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines += _text(value, indent + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(f"{indent}  -")
                lines += _text(item, indent + "    ")
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: {' '.join(str(v) for v in value)}")
        else:
            lines.append(f"{indent}{key}: {'null' if value is None else value}")
    return lines


def _emit(doc: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        stream.write("\n".join(_text(doc)) + "\n")


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Attach the value of ``--lambda`` so that ``-3/2`` and ``-inf`` are not read as options."""
    out: list[str] = []
    argv = list(argv)
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--lambda" and i + 1 < len(argv):
            out.append(f"--lambda={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _validate(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"ostrowski: error: {exc}\n")
        return 2
    try:
        code, body = COMMANDS[args.command](args)
    except OstrowskiError as exc:
        code, body = 1, {"error": type(exc).__name__, "message": str(exc)}
    except (ArithmeticError, RecursionError, MemoryError) as exc:
        code, body = 1, {"error": type(exc).__name__, "message": str(exc)}
    doc = {"schema": SCHEMA, "command": args.command}
    doc.update(body)
    _emit(doc, args.format, stdout)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
