"""Command-line interface: ``gaussbures {analyze,sweep,fidelity,verify}``.

Exit codes: 0 success, 1 verification failure, 2 unphysical or invalid
input, 64 usage error. Numbers are printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .core import OneModeCovariance, StandardParams, Verdict, verdict_from_kt
from .entanglement import analyze, e0, max_fidelity
from .errors import GaussBuresError
from .fidelity import bures_distance, one_mode_fidelity
from .oracle import run_campaign, sample_entangled_states

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_UNPHYSICAL = 2
EXIT_USAGE = 64

VERIFY_TOL = 1e-5
CSV_HEADER = ["param", "kt_minus", "e0", "max_fidelity", "verdict"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _num(x):
    if x is None:
        return None
    return float(f"{x:.12g}")


def _fmt(x) -> str:
    return "" if x is None else f"{x:.12g}"


def _dump(obj, out):
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _round_report(d: dict) -> dict:
    return {k: (_num(v) if isinstance(v, float) else v) for k, v in d.items()}


def cmd_analyze(args, out) -> int:
    params = StandardParams.symmetric(args.b, args.c, args.d, args.u)
    _dump(_round_report(analyze(params).to_dict()), out)
    return EXIT_OK


def _sweep_row(args, value) -> dict:
    if args.vary == "kt_minus":
        if not value > 0:
            raise GaussBuresError("kt_minus must be positive")
        verdict = verdict_from_kt(value)
        f = max_fidelity(value) if verdict is Verdict.ENTANGLED else 1.0
        return {"param": value, "kt_minus": value, "e0": e0(value), "max_fidelity": f, "verdict": verdict.value}
    fixed = {"b": args.b, "c": args.c, "d": args.d}
    fixed[args.vary] = value
    report = analyze(StandardParams.symmetric(fixed["b"], fixed["c"], fixed["d"], args.u))
    return {"param": value, "kt_minus": report.pt_spectrum.k_minus, "e0": report.e0,
            "max_fidelity": report.max_fidelity, "verdict": report.verdict.value}


def cmd_sweep(args, out) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.start < args.stop:
        raise UsageError("--from must be smaller than --to")
    if args.vary != "kt_minus":
        missing = [p for p in ("b", "c", "d") if p != args.vary and getattr(args, p) is None]
        if missing:
            raise UsageError("missing fixed parameter(s): " + ", ".join("--" + m for m in missing))
    rows = []
    for value in np.linspace(args.start, args.stop, args.steps):
        value = float(value)
        try:
            rows.append(_sweep_row(args, value))
        except GaussBuresError:
            rows.append({"param": value, "kt_minus": None, "e0": None, "max_fidelity": None, "verdict": "SKIPPED"})
    if args.format == "json":
        _dump([_round_report(r) for r in rows], out)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([_fmt(r[k]) if k != "verdict" else r[k] for k in CSV_HEADER])
    return EXIT_OK


def cmd_fidelity(args, out) -> int:
    a = OneModeCovariance(*args.a)
    b = OneModeCovariance(*args.b)
    f = one_mode_fidelity(a, b)
    _dump({"fidelity": _num(f), "bures_distance": _num(bures_distance(f))}, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.grid_size < 1:
        raise UsageError("--grid-size must be at least 1")
    records = run_campaign(sample_entangled_states(args.grid_size, args.seed), workers=args.workers)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(records, fh, indent=2)
            fh.write("\n")
    worst = max(r["abs_error"] for r in records)
    out.write(f"{len(records)} states, max |Δ| = {worst:.3e}\n")
    return EXIT_OK if worst < VERIFY_TOL else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gaussbures", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="entanglement report of a symmetric standard state")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--u", type=float, default=1.0, help="local squeeze factor (both modes)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="tabulate E0 while varying one parameter")
    p.add_argument("--vary", choices=["b", "c", "d", "kt_minus"], required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--u", type=float, default=1.0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fidelity", help="fidelity and Bures distance of two one-mode states")
    p.add_argument("--a", type=float, nargs=3, required=True, metavar=("V11", "V12", "V22"))
    p.add_argument("--b", type=float, nargs=3, required=True, metavar=("V11", "V12", "V22"))
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("verify", help="closed forms against the brute-force optimiser")
    p.add_argument("--grid-size", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write per-state JSON records here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"gaussbures {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GaussBuresError as exc:
        print(f"gaussbures {args.command}: {exc}", file=sys.stderr)
        return EXIT_UNPHYSICAL


if __name__ == "__main__":
    sys.exit(main())
