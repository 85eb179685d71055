"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 usage error,
3 precision problem or indeterminate classification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import ROUND_CEILING, Context, Decimal
from fractions import Fraction

import mpmath

from .boundslab import (
    convergence_ok,
    convergence_table,
    dominant_fit,
    verify_eq9,
    verify_eq11,
    verify_eq12,
    verify_theorem,
)
from .errors import IndeterminateError, PrecisionEscalationError, RootFindingError
from .polycore import beta_exact, beta1_bracket
from .rootlab import classify, isolate_dominant
from .schema import SCHEMA_VERSION
from .seqcore import (
    SequenceSpec,
    cassini_residual,
    fib_lucas_residual,
    growth_margin,
    lucas_power_margin,
    sequence_terms,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

DEFAULT_DIGITS = 50
DEFAULT_TOL = "1e-30"


def rational(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def decimal_up(q: Fraction, digits: int = 20) -> str:
    """Decimal string no smaller than q, ``digits`` significant digits."""
    ctx = Context(prec=digits, rounding=ROUND_CEILING)
    return str(ctx.divide(Decimal(q.numerator), Decimal(q.denominator)))


def mp_text(x, digits: int) -> str:
    return mpmath.nstr(x, digits, min_fixed=-5, max_fixed=30)


def envelope(command: str, parameters: dict, payload: dict, *, digits=None, tol=None,
             exact: bool = False) -> dict:
    precision = {"exact": exact}
    if digits is not None:
        precision["digits"] = digits
    if tol is not None:
        precision["tol"] = rational(tol)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "precision": precision,
        "payload": payload,
    }


def emit_json(obj: dict, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def emit_csv(header: list[str], rows: list[list], out, comments: list[str] = ()) -> None:
    for line in comments:
        out.write(f"# {line}\n")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buf.getvalue())


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_root(args, out) -> int:
    enc = isolate_dominant(args.k, args.tol)
    payload = {
        "k": args.k,
        "lo": rational(enc.lo),
        "hi": rational(enc.hi),
        "width": rational(enc.width),
        "midpoint_decimal": enc.midpoint_decimal(args.digits),
    }
    params = {"k": args.k, "tol": rational(args.tol), "digits": args.digits}
    if args.format == "csv":
        emit_csv(
            ["k", "lo", "hi", "width", "midpoint_decimal"],
            [[args.k, rational_text(enc.lo), rational_text(enc.hi), rational_text(enc.width),
              payload["midpoint_decimal"]]],
            out,
        )
    else:
        emit_json(envelope("root", params, payload, digits=args.digits, tol=args.tol), out)
    return EXIT_OK


def cmd_seq(args, out) -> int:
    terms = sequence_terms(SequenceSpec(args.k), args.n)
    if args.format == "csv":
        emit_csv(["n", "a_n"], [[i, str(a)] for i, a in enumerate(terms)], out)
    else:
        payload = {"k": args.k, "n": args.n, "terms": [str(a) for a in terms], "last": str(terms[-1])}
        emit_json(envelope("seq", {"k": args.k, "n": args.n}, payload, exact=True), out)
    return EXIT_OK


def bounds_rows(k_max: int, tol: Fraction, digits: int) -> list[dict]:
    rows = []
    table = convergence_table(k_max, tol)
    for crow in table:
        k, enc = crow.k, crow.enclosure
        eq9 = verify_eq9(k, enc)
        thm = verify_theorem(k, enc)
        exact = beta_exact(k)
        if exact:
            beta1 = rational_text(exact[0])
        else:
            lo, _ = beta1_bracket(k, 4 * digits)
            beta1 = str(Context(prec=digits).divide(Decimal(lo.numerator), Decimal(lo.denominator)))
        rows.append({
            "k": k,
            "fib_lower": thm.lower,
            "beta1": beta1,
            "beta1_exact": exact is not None,
            "lambda_lo": enc.lo,
            "lambda_hi": enc.hi,
            "fib_upper": thm.upper,
            "phi_gap": decimal_up(crow.gap_upper),
            "all_pass": eq9.passed and thm.passed and crow.gap_lower > 0 and crow.beta1_below,
        })
    if not convergence_ok(table):
        for row in rows:
            row["all_pass"] = False
    return rows


def cmd_bounds(args, out) -> int:
    rows = bounds_rows(args.k_max, args.tol, args.digits)
    all_pass = all(r["all_pass"] for r in rows)
    if args.format == "json":
        payload_rows = [
            {
                **r,
                "fib_lower": rational(r["fib_lower"]),
                "lambda_lo": rational(r["lambda_lo"]),
                "lambda_hi": rational(r["lambda_hi"]),
                "fib_upper": rational(r["fib_upper"]),
            }
            for r in rows
        ]
        params = {"k_max": args.k_max, "tol": rational(args.tol), "digits": args.digits}
        emit_json(envelope("bounds", params, {"rows": payload_rows, "all_pass": all_pass},
                           digits=args.digits, tol=args.tol), out)
    else:
        header = ["k", "fib_lower", "beta1", "lambda_lo", "lambda_hi", "fib_upper", "phi_gap", "all_pass"]
        emit_csv(
            header,
            [
                [r["k"], rational_text(r["fib_lower"]), r["beta1"], rational_text(r["lambda_lo"]),
                 rational_text(r["lambda_hi"]), rational_text(r["fib_upper"]), r["phi_gap"],
                 str(r["all_pass"]).lower()]
                for r in rows
            ],
            out,
        )
    if not all_pass:
        failed = [r["k"] for r in rows if not r["all_pass"]]
        print(f"bound check failed for k = {failed}", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_certify(args, out) -> int:
    try:
        res = classify(args.k, args.digits)
    except IndeterminateError as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    payload = {
        "k": args.k,
        "kind": res.kind.value,
        "max_conjugate_modulus": mp_text(res.max_conjugate_modulus, args.digits // 2),
        "unit_modulus_count": res.unit_modulus_count,
        "minimal_poly_note": res.minimal_poly_note,
    }
    if args.format == "csv":
        emit_csv(list(payload), [list(payload.values())], out)
    else:
        emit_json(envelope("certify", {"k": args.k, "digits": args.digits}, payload,
                           digits=args.digits), out)
    return EXIT_OK


def _sweep(name, func, lo, hi, ok):
    for i in range(lo, hi + 1):
        if not ok(func(i)):
            return {"name": name, "range": [lo, hi], "passed": False, "counterexample": i}
    return {"name": name, "range": [lo, hi], "passed": True, "counterexample": None}


def identity_sweeps(n_max: int) -> tuple[list[dict], list[str]]:
    sweeps = [
        _sweep("cassini_residual == 0", cassini_residual, 1, n_max, lambda v: v == 0),
        _sweep("fib_lucas_residual == 0", fib_lucas_residual, 0, n_max, lambda v: v == 0),
        _sweep("growth_margin > 0", growth_margin, 3, n_max, lambda v: v > 0),
        _sweep("lucas_power_margin > 0", lucas_power_margin, 4, n_max, lambda v: v > 0),
        _sweep("upper-bound step holds", verify_eq11, 3, n_max, bool),
        _sweep("lower-bound step holds", verify_eq12, 4, n_max, bool),
    ]
    at3 = lucas_power_margin(3)
    exceptions = [
        f"lucas_power_margin(3) = {at3}: documented exception, k = 3 is settled by direct evaluation"
    ]
    if at3 != -18:
        sweeps.append({"name": "lucas_power_margin(3) == -18", "range": [3, 3],
                       "passed": False, "counterexample": 3})
    return sweeps, exceptions


def cmd_identities(args, out) -> int:
    if args.n_max < 10:
        print("identities: --n-max must be >= 10", file=sys.stderr)
        return EXIT_USAGE
    sweeps, exceptions = identity_sweeps(args.n_max)
    all_pass = all(s["passed"] for s in sweeps)
    if args.format == "json":
        emit_json(envelope("identities", {"n_max": args.n_max},
                           {"sweeps": sweeps, "exceptions": exceptions, "all_pass": all_pass},
                           exact=True), out)
    else:
        for s in sweeps:
            lo, hi = s["range"]
            status = "PASS" if s["passed"] else f"FAIL (first counterexample {s['counterexample']})"
            out.write(f"{s['name']:<28} {lo}..{hi}: {status}\n")
        for note in exceptions:
            out.write(f"note: {note}\n")
        out.write("all identities hold\n" if all_pass else "identity check FAILED\n")
    return EXIT_OK if all_pass else EXIT_FALSIFIED


def cmd_fit(args, out) -> int:
    try:
        fit = dominant_fit(args.k, args.n_max, args.digits)
    except PrecisionEscalationError as exc:
        print(f"precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    show = 20
    terms = sequence_terms(SequenceSpec(args.k), args.n_max)
    with mpmath.workdps(2 * args.digits):
        lam = fit.roots[0]
        rows = [
            [n, str(a), mp_text(fit.C * lam**n, show), mp_text(err, 6), mp_text(bound, 6)]
            for (n, err), (_, bound), a in zip(fit.errors, fit.envelope, terms)
        ]
    c_text = mp_text(fit.C, show)
    ratio = mp_text(fit.decay_ratio, 8)
    predicted = mp_text(fit.predicted_ratio, 8)
    if args.format == "json":
        payload = {
            "k": args.k, "C": c_text, "decay_ratio": ratio, "predicted_ratio": predicted,
            "rows": [dict(zip(["n", "a_n", "C_lambda_n", "rel_error", "rel_error_bound"], r))
                     for r in rows],
        }
        emit_json(envelope("fit", {"k": args.k, "n_max": args.n_max, "digits": args.digits},
                           payload, digits=args.digits), out)
    else:
        emit_csv(["n", "a_n", "C_lambda_n", "rel_error", "rel_error_bound"], rows, out,
                 comments=[f"C={c_text}", f"decay_ratio={ratio}", f"predicted_ratio={predicted}"])
    return EXIT_OK


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _order(text: str) -> int:
    k = int(text)
    if k < 3:
        raise argparse.ArgumentTypeError(f"k must be >= 3, got {k}")
    return k


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def _positive_rational(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return q


def _digits(text: str) -> int:
    d = int(text)
    if d < 30:
        raise argparse.ArgumentTypeError("digits must be >= 30")
    return d


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plastic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *, fmt="json", choices=("json", "csv")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=list(choices), default=fmt)
        return p

    p = add("root", "certified enclosure of the dominant root")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--tol", type=_positive_rational, default=Fraction(DEFAULT_TOL))
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_root)

    p = add("seq", "terms a_0..a_n of the generalized Padovan sequence")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_seq)

    p = add("bounds", "bound and convergence sweep over k = 3..k_max", fmt="csv")
    p.add_argument("--k-max", type=_order, required=True)
    p.add_argument("--tol", type=_positive_rational, default=Fraction(DEFAULT_TOL))
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_bounds)

    p = add("certify", "Pisot/Salem classification of lambda_k")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_certify)

    p = add("identities", "exact sweeps of the Fibonacci/Lucas identities", fmt="text",
            choices=("text", "json"))
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_identities)

    p = add("fit", "dominant-root approximation of a_n", fmt="csv")
    p.add_argument("--k", type=_order, required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "fit" and args.n_max < 4 * args.k:
        print(f"fit: --n-max must be >= 4k = {4 * args.k}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except RootFindingError as exc:
        print(f"root finding failed: {exc} {exc.diagnostics}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
