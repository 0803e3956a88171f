"""Command-line front end: verify, kernel, table and krr subcommands."""

import argparse
import csv
import datetime
import json
import re
import sys

import numpy as np

from . import mlkit as ML
from .kernels import Family, KernelSpec, evaluate_kernel

SUITE_NAMES = ("specfun", "kernels", "polygauss", "transforms", "mlkit", "all")

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_NUM}")
_IMAG = re.compile(rf"([+-]?)({_NUM})?i")
_BOTH = re.compile(rf"([+-]?{_NUM})([+-])({_NUM})?i")


class UsageError(ValueError):
    pass


def parse_complex(text):
    """Parse "a", "bi", "a+bi", "a-bi" or "i"; whitespace is rejected."""
    if _REAL.fullmatch(text):
        return complex(float(text), 0.0)
    m = _IMAG.fullmatch(text)
    if m:
        b = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -b if m.group(1) == "-" else b)
    m = _BOTH.fullmatch(text)
    if m:
        b = float(m.group(3)) if m.group(3) else 1.0
        return complex(float(m.group(1)), -b if m.group(2) == "-" else b)
    raise UsageError(f"invalid complex literal {text!r}")


def format_complex(v):
    # adding 0.0 turns -0.0 into 0.0
    v = complex(v)
    v = complex(v.real + 0.0, v.imag + 0.0)
    return f"{v.real:.17g}{v.imag:+.17g}i"


def format_real(v):
    return f"{float(v) + 0.0:.17g}"


def parse_vector(text):
    try:
        return np.array([float(t) for t in text.split(",")])
    except ValueError:
        raise UsageError(f"invalid vector {text!r}") from None


def parse_grid(text):
    """min:max:steps for one axis."""
    parts = text.split(":")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise UsageError(f"invalid grid {text!r}, expected min:max:steps") from None
    if len(parts) != 3 or n < 1:
        raise UsageError(f"invalid grid {text!r}, expected min:max:steps")
    return np.linspace(lo, hi, n)


def _spec_from(args):
    try:
        return KernelSpec(
            Family.parse(args.family),
            alpha=args.alpha,
            gamma=args.gamma,
            order=args.order,
            rho=args.rho,
            shift_a=args.a,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def _add_kernel_flags(p):
    p.add_argument("--family", required=True)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--a", type=float, default=0.0)


def cmd_verify(args):
    from . import verify

    checks, wall = verify.run_suite(args.suite)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    if args.json:
        report = {"suite_name": args.suite, "checks": [c.to_dict() for c in checks]}
        if not args.no_timestamp:
            report["wall_time"] = wall
            report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0 if failed == 0 else 1


def cmd_kernel(args):
    spec = _spec_from(args)
    if spec.family is Family.PolyRBF_Rd:
        if args.x is None or args.y is None:
            raise UsageError("polyrbf_rd needs --x and --y")
        x, y = parse_vector(args.x), parse_vector(args.y)
        if x.shape != y.shape:
            raise UsageError("--x and --y must have the same length")
        print(format_real(evaluate_kernel(spec, x, y)))
        return 0
    if args.z is None or args.w is None:
        raise UsageError("--z and --w are required")
    z, w = parse_complex(args.z), parse_complex(args.w)
    print(format_complex(evaluate_kernel(spec, z, w)))
    return 0


def cmd_table(args):
    spec = _spec_from(args)
    g1 = parse_grid(args.grid)
    g2 = parse_grid(args.grid2) if args.grid2 else g1
    real = spec.family is Family.PolyRBF_Rd
    w = None if real else parse_complex(args.w or "0")
    header = ["x", "y"] if real else ["re", "im"]
    rows = []
    for a in g1:
        for b in g2:
            if real:
                v = complex(evaluate_kernel(spec, np.array([a]), np.array([b])))
            else:
                v = complex(evaluate_kernel(spec, complex(a, b), w))
            rows.append([format_real(a), format_real(b), format_real(v.real), format_real(v.imag)])
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header + ["value_re", "value_im"])
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_krr(args):
    if args.action == "fit":
        if not args.target:
            raise UsageError("fit needs --target")
        spec = _spec_from_rd(args)
        data = ML.load_csv(args.data, target=args.target)
        model = ML.krr_fit(spec, data, args.ridge)
        with open(args.model, "w", encoding="utf-8") as fh:
            fh.write(model.to_json())
            fh.write("\n")
        print(f"fitted {len(data)} rows, d = {data.d}, jitter {model.jitter_used!r}")
        return 0
    with open(args.model, encoding="utf-8") as fh:
        model = ML.GramModel.from_json(fh.read())
    data = ML.load_csv(args.data, target=args.target)
    try:
        pred = ML.krr_predict(model, data.X)
    except ML.DimensionError as e:
        raise UsageError(str(e)) from None
    out = ML.Dataset(data.X, pred, data.feature_names)
    if args.out in (None, "-"):
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["prediction"])
        writer.writerows([[repr(float(v))] for v in pred])
    else:
        ML.save_csv(args.out, out, target="prediction")
    return 0


def _spec_from_rd(args):
    try:
        return KernelSpec(Family.PolyRBF_Rd, gamma=args.gamma, order=args.order)
    except ValueError as e:
        raise UsageError(str(e)) from None


def build_parser():
    p = argparse.ArgumentParser(prog="polyrbf", description="Polyanalytic RBF kernel toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--json", metavar="PATH")
    v.add_argument("--no-timestamp", action="store_true", help="omit timestamp and wall time from the report")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kernel", help="evaluate a kernel at one pair of points")
    _add_kernel_flags(k)
    k.add_argument("--z")
    k.add_argument("--w")
    k.add_argument("--x", help="comma-separated vector for polyrbf_rd")
    k.add_argument("--y", help="comma-separated vector for polyrbf_rd")
    k.set_defaults(func=cmd_kernel)

    t = sub.add_parser("table", help="kernel values over a grid as CSV")
    _add_kernel_flags(t)
    t.add_argument("--grid", required=True, help="min:max:steps")
    t.add_argument("--grid2", help="second axis, defaults to --grid")
    t.add_argument("--w", help="fixed second point for complex families")
    t.add_argument("--out", help="output CSV path, stdout by default")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("krr", help="kernel ridge regression")
    r.add_argument("action", choices=("fit", "predict"))
    r.add_argument("--data", required=True)
    r.add_argument("--target")
    r.add_argument("--gamma", type=float, default=2.0)
    r.add_argument("--order", type=int, default=1)
    r.add_argument("--lambda", dest="ridge", type=float, default=1e-8)
    r.add_argument("--model", required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_krr)
    return p


_VALUE_FLAGS = ("--z", "--w", "--x", "--y", "--a", "--rho", "--gamma", "--alpha", "--grid", "--grid2", "--lambda")


def _glue_negative_values(argv):
    # argparse reads "-0.5i" as an option; rewrite "--w -0.5i" as "--w=-0.5i"
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2] in "0123456789.i":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
