"""Command-line interface.

Exit codes: 0 success, 2 usage or input error, 3 numerical failure,
4 verification failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import kernel, schatten, tensor, verifier
from .errors import InputError, NumericalError
from .io import (
    load_json_file,
    matrix_from_json,
    matrix_to_json,
    rep_to_json,
    tensor_from_json,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _p_value(text):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid p {text!r}") from None
    if not p > 0:
        raise argparse.ArgumentTypeError(f"p must be positive, got {text!r}")
    return p


def _p_label(p):
    if math.isinf(p):
        return "inf"
    return str(int(p)) if p == int(p) else repr(p)


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2, allow_nan=False)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_matrix(path):
    return kernel.as_matrix(matrix_from_json(load_json_file(path)))


def cmd_norms(args):
    t = _load_matrix(args.input)
    values = {_p_label(p): schatten.schatten_norm(t, p) for p in args.p}
    if args.json:
        _emit(values)
    else:
        for label, v in values.items():
            print(f"p={label}\t{v!r}")
    return EXIT_OK


def cmd_decompose(args):
    t = _load_matrix(args.input)
    kind = args.kind
    if kind == "svd":
        u, s, v = kernel.svd(t)
        doc = {"U": matrix_to_json(u), "singular_values": [float(x) for x in s], "V": matrix_to_json(v)}
    elif kind == "polar":
        w, p = kernel.polar(t)
        doc = {"W": matrix_to_json(w), "P": matrix_to_json(p)}
    elif kind == "abs":
        doc = {"abs": matrix_to_json(kernel.abs_op(t))}
    elif kind == "nuclear-rep":
        rep = tensor.optimal_rep(t)
        doc = {"rep": rep_to_json(rep), "cost": tensor.rep_cost(rep)}
    else:
        a, b = schatten.factor_hs(t)
        doc = {"A": matrix_to_json(a), "B": matrix_to_json(b)}
    doc = {"kind": kind, **doc}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_tensor(args):
    f = tensor_from_json(load_json_file(args.input))
    if args.op == "pnorm":
        _emit({"projective_norm": tensor.projective_norm(f)})
    elif args.op == "inorm":
        _emit({"injective_norm": tensor.injective_norm(f)})
    else:
        k = tensor.k_map(f)
        _emit({"kmap": matrix_to_json(k), "operator_norm": kernel.operator_norm(k)})
    return EXIT_OK


def cmd_verify(args):
    props = [p for p in args.properties.split(",") if p.strip()] or ["all"]
    config = verifier.SuiteConfig(
        dims=args.dims,
        trials=args.trials,
        seed=args.seed,
        tol_algebraic=args.tol,
        tol_stochastic=args.tol_stochastic,
        properties=props,
        threads=args.threads,
    )
    report = verifier.run_suite(config)
    text = report.to_json(include_timing=not args.no_timing)
    if args.report and args.report != "-":
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    for rec in report.records:
        if not rec.passed:
            print(f"FAIL {rec.property_id} [{rec.paper_anchor}]: {rec.failures}/{rec.trials_run}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_counterexample(args):
    rec = verifier.shift_report(args.dim)
    if args.json:
        _emit({k: ("inf" if isinstance(v, float) and math.isinf(v) else v) for k, v in rec.items()})
    else:
        for k, v in rec.items():
            print(f"{k}\t{v!r}" if not isinstance(v, float) else f"{k}\t{v:.17g}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="traceclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("norms", help="Schatten norms of a matrix")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("-p", nargs="+", type=_p_value, default=[1.0, 2.0, math.inf],
                   help="exponents, e.g. 1 2 inf (default)")
    p.add_argument("--json", action="store_true", help="print a JSON object")
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("decompose", help="write factor matrices as JSON")
    p.add_argument("input")
    p.add_argument("--kind", required=True, choices=["svd", "polar", "abs", "nuclear-rep", "factor-hs"])
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tensor", help="crossnorms and the K map of a tensor element")
    p.add_argument("op", choices=["pnorm", "inorm", "kmap"])
    p.add_argument("input", help="tensor element JSON file")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("verify", help="run the seeded property suite")
    p.add_argument("--dims", type=_int_list, default=[2, 4, 8])
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=kernel.DEFAULT_TOL)
    p.add_argument("--tol-stochastic", type=float, default=1e-6)
    p.add_argument("--properties", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--report", help="report path (default stdout)")
    p.add_argument("--csv", help="also write a CSV summary here")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", help="finite shift illustration")
    p.add_argument("kind", choices=["shift"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"traceclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"traceclass: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"traceclass: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
