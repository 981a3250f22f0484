"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 unsupported request, 4 complete-positivity violation.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import capacities as cap
from . import oracles
from .channels import WCCSpec, channel_from_spec, dc_weyl_distribution, load_spec, resolve_spec
from .errors import CPViolationError
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_CP = 4


class UnsupportedRequest(Exception):
    pass


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.12g}"


def _json_value(x):
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


def _read_spec(text):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    return load_spec(text)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(header, rows, fmt):
    if fmt == "json":
        records = [
            {k: _json_value(v) for k, v in zip(header, row) if v != ""} for row in rows
        ]
        return json.dumps(records) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, (str, int)) else _fmt(v) for v in row])
    return buf.getvalue()


def capacity_report(spec, kind, method="closed_form", seed=0):
    """Evaluate one capacity of a JSON channel spec as a CapacityReport."""
    kind = kind.upper().replace("QEA", "Q_EA")
    if kind not in cap.KINDS:
        raise ValueError(f"unknown capacity kind {kind!r}")
    spec = load_spec(spec)
    channel = channel_from_spec(spec)
    if not channel.is_cp:
        raise CPViolationError("capacities are only defined for completely positive maps")
    family, d, param = resolve_spec(spec)
    if kind == "UA" and family != "dc":
        raise UnsupportedRequest(
            "UA capacity is only available for depolarizing channels: additivity of the "
            "Holevo quantity is unproven for Weyl-covariant channels with d > 2"
        )
    if method == "closed_form":
        if family == "dc":
            value = cap.c_ua_dc(d, param) if kind == "UA" else cap.c_ea_dc(d, param)
        else:
            value = cap.c_ea_wcc(WCCSpec(d, np.clip(param, 0.0, None)))
    elif method == "oracle":
        if kind == "UA":
            value = math.log2(d) - oracles.min_output_entropy(channel, seed=seed).optimum_value
        else:
            value = oracles.maximize_mutual_information(channel, seed=seed).optimum_value
    else:
        raise ValueError(f"unknown method {method!r}")
    if kind == "Q_EA":
        value = cap.q_ea(value)
    return cap.CapacityReport(spec, kind, float(value), method)


def scan_rows(d, grid):
    """``(lambda, c_ua, c_ea)`` over the CP interval, including lambda = 0."""
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    lams = np.union1d(np.linspace(cap.lambda_min_dc(d), 1.0, grid), [0.0])
    return [(lam, cap.c_ua_dc(d, lam), cap.c_ea_dc(d, lam)) for lam in lams]


def asymmetry_rows(dims, grid, kind="both"):
    rows = []
    for d in dims:
        bound = abs(cap.lambda_min_dc(d))
        for k in range(1, grid + 1):
            a = bound * k / grid
            ua = "" if d == 2 else cap.asymmetry_ratio_dc(d, a, "UA")
            ea = cap.asymmetry_ratio_dc(d, a, "EA")
            row = [d, a]
            if kind in ("both", "ua"):
                row.append(ua)
            if kind in ("both", "ea"):
                row.append(ea)
            rows.append(row)
    return rows


def _dims(text):
    try:
        dims = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"bad dimension list {text!r}") from None
    if not dims or any(d < 2 or d > 10 for d in dims):
        raise ValueError("dimensions must lie in 2..10")
    return dims


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reciprocal-channels",
        description="Capacities of reciprocal pairs of depolarizing and Weyl-covariant channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="evaluate one capacity of a channel spec")
    p.add_argument("--spec", required=True, help="channel spec as JSON text or @file")
    p.add_argument("--kind", required=True, choices=["ua", "ea", "qea"])
    p.add_argument("--method", default="closed_form", choices=["closed_form", "oracle"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", default="json", choices=["json"])

    p = sub.add_parser("cp-range", help="CP interval of mixers over a WCC spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out")

    p = sub.add_parser("scan", help="UA and EA capacity of the DC across its CP interval")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json"])

    p = sub.add_parser("asymmetry", help="DC asymmetry ratios versus |lambda|")
    p.add_argument("--d", default="2,3,4,5,6,7,8,9,10", help="comma-separated dimensions")
    p.add_argument("--kind", default="both", choices=["ua", "ea", "both"])
    p.add_argument("--grid", type=int, default=50)
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json"])

    p = sub.add_parser("wcc-grid", help="maximum EA asymmetry ratio over the qubit WCC simplex")
    p.add_argument("--d", type=int, default=2, choices=[2])
    p.add_argument("--resolution", type=int, default=21)
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json"])

    p = sub.add_parser("verify", help="run the invariant and oracle suites")
    p.add_argument("--suite", default="fast", choices=["fast", "full"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    return parser


def _run(args):
    if args.command == "capacity":
        report = capacity_report(_read_spec(args.spec), args.kind, args.method, args.seed)
        _emit(json.dumps(report.to_json()) + "\n", args.out)
    elif args.command == "cp-range":
        family, d, q = resolve_spec(_read_spec(args.spec))
        if family == "dc":
            q = dc_weyl_distribution(d, q)
        _emit(json.dumps(cap.cp_range_wcc(q, d).to_json()) + "\n", args.out)
    elif args.command == "scan":
        rows = scan_rows(args.d, args.grid)
        _emit(_table(["lambda", "c_ua", "c_ea"], rows, args.format), args.out)
    elif args.command == "asymmetry":
        if args.grid < 2:
            raise ValueError("grid must have at least 2 points")
        header = ["d", "abs_lambda"] + {"both": ["a_ua", "a_ea"], "ua": ["a_ua"], "ea": ["a_ea"]}[args.kind]
        rows = asymmetry_rows(_dims(args.d), args.grid, args.kind)
        _emit(_table(header, rows, args.format), args.out)
    elif args.command == "wcc-grid":
        if args.resolution < 5:
            raise ValueError("resolution must be >= 5")
        rows = cap.wcc_asymmetry_grid(args.resolution)
        _emit(_table(["q1", "q2", "q3", "max_ratio"], rows, args.format), args.out)
    elif args.command == "verify":
        summary = run_suite(args.suite, args.seed)
        _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", args.out)
        return EXIT_OK if summary["passed"] else EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except CPViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CP
    except UnsupportedRequest as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
