"""Command line: classify, factor, certify, bench.

Exit codes: 0 found / valid / produced, 1 nothing found, 2 bad input or
inapplicable hypothesis.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .oracle import GuardError
from .ratio import certificate_value, certificate_witness, witness_to_ratio
from .report import (
    BENCH_COLUMNS,
    METHODS,
    InapplicableError,
    bench_range,
    search,
    witness_to_dict,
)
from .residues import DigitClass, InputError, applicable_methods, offset_params, profile

EXIT_OK, EXIT_NONE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def natural(text: str) -> int:
    s = text.strip()
    if not s.isdigit():
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}")
    return int(s)


def positive(text: str) -> int:
    n = natural(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="endsin1", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="residue profile and applicable methods")
    c.add_argument("p", type=natural)
    c.add_argument("--json", action="store_true")

    f = sub.add_parser("factor", help="search for a factor pair")
    f.add_argument("p", type=natural)
    f.add_argument("--method", choices=METHODS, default="auto")
    f.add_argument("--json", action="store_true")
    f.add_argument("--partitions", type=positive, default=1,
                   help="split each sweep range into this many chunks")
    f.add_argument("--workers", type=positive, default=1)
    f.add_argument("--no-timing", action="store_true",
                   help="omit wall times so output is byte-stable")

    r = sub.add_parser("certify", help="perfect-square certificate for a given N")
    r.add_argument("p", type=natural)
    r.add_argument("--N", dest="N", type=natural, required=True)
    r.add_argument("--mode", choices=("ten", "twenty"), default="ten")
    r.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="candidate counts per method over a range")
    b.add_argument("--from", dest="start", type=natural, required=True)
    b.add_argument("--to", dest="stop", type=natural, required=True)
    b.add_argument("--csv", dest="csv_path")
    b.add_argument("--partitions", type=positive, default=1)
    return parser


def _emit(out, data: dict, as_json: bool) -> None:
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
        return
    for key, value in data.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        out.write(f"{key}: {value}\n")


def cmd_classify(args, out) -> int:
    prof = profile(args.p)
    methods = [
        f"{kind}{dc.label}" if kind in ("lambda", "fallback") else kind
        for dc, kind in applicable_methods(prof)
    ]
    offsets = {}
    for dc in DigitClass:
        prm = offset_params(prof.p, dc) if prof.trivial_factor is None else None
        offsets[dc.label] = None if prm is None else {
            "L": str(prm.L), "C": str(prm.C), "D": str(prm.D), "modulus": str(prm.modulus)}
    data = {
        "p": str(prof.p),
        "last_digit": str(prof.last_digit),
        "mod3": str(prof.mod3),
        "p_plus_10_mod9": str(prof.p_plus_10_mod9),
        "mod11": str(prof.mod11),
        "trivial_factor": None if prof.trivial_factor is None else str(prof.trivial_factor),
        "methods": methods,
        "offsets": offsets,
    }
    _emit(out, data, args.json)
    return EXIT_OK


def cmd_factor(args, out) -> int:
    rep = search(args.p, args.method, args.partitions, args.workers, not args.no_timing)
    if args.json:
        out.write(rep.to_json() + "\n")
    else:
        out.write(f"p: {rep.p}\nverdict: {rep.verdict}\n")
        for m in rep.methods:
            status = "" if m.applicable else f" (inapplicable: {m.reason})"
            out.write(f"  {m.method}: tried {m.candidates_tried}{status}\n")
            for w in m.witnesses:
                f, g = w.factors
                out.write(f"    {rep.p} = {f} * {g}  A={w.A} B={w.B}\n")
        if rep.prime is not None:
            out.write(f"prime: {str(rep.prime).lower()}\n")
    return EXIT_OK if rep.witnesses else EXIT_NONE


def cmd_certify(args, out) -> int:
    profile(args.p)
    if args.p <= 81:
        raise InputError("certificates need p > 81")
    try:
        cert = certificate_value(args.p, args.N, args.mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    w = certificate_witness(cert)
    data = {
        "p": str(cert.p),
        "N": str(cert.N),
        "mode": cert.mode,
        "value": str(cert.value),
        "root": None if cert.root is None else str(cert.root),
        "witness": None if w is None else witness_to_dict(w),
    }
    if w is not None:
        rp = witness_to_ratio(args.p, w, args.mode)
        if rp is not None:
            data["M"] = str(rp.M)
    _emit(out, data, args.json)
    return EXIT_OK if cert.root is not None else EXIT_NONE


def cmd_bench(args, out) -> int:
    if args.start > args.stop:
        raise InputError("--from must not exceed --to")
    rows = bench_range(args.start, args.stop, args.partitions)
    if args.csv_path:
        with open(args.csv_path, "w", newline="") as fh:
            _write_csv(fh, rows)
    else:
        _write_csv(out, rows)
    return EXIT_OK


def _write_csv(fh, rows) -> None:
    w = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


COMMANDS = {
    "classify": cmd_classify,
    "factor": cmd_factor,
    "certify": cmd_certify,
    "bench": cmd_bench,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (UsageError, InputError, InapplicableError, GuardError) as exc:
        err.write(f"endsin1: error: {exc}\n")
        return EXIT_INVALID


def run_capture(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run with captured streams; handy for tests and scripting."""
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
