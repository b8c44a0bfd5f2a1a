"""Command-line front end: ``trinomials {table,roots,verify,limits}``.

Exit codes: 0 success, 1 validation error, 2 numerical failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, InvalidOperation
from typing import Optional, Sequence

from . import report
from .analysis import AnalysisReport
from .errors import ConvergenceError, DomainError, NumericalError, ValidationError
from .limits import measure_limit_extended
from .poly_solver import TrinomialSpec

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def parse_a_list(text: str) -> tuple:
    """``0.5,1,1.5`` or ``range:start:stop:step`` (stop included)."""
    try:
        if text.startswith("range:"):
            start, stop, step = (Decimal(s) for s in text[6:].split(":"))
            if step <= 0:
                raise argparse.ArgumentTypeError("range step must be positive")
            count = int((stop - start) / step)
            return tuple(float(start + i * step) for i in range(count + 1))
        return tuple(complex(s) if "j" in s else float(s) for s in text.split(",") if s.strip())
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"not a list of numbers or range: {text!r}")


def parse_k_list(text: str) -> tuple[int, ...]:
    ks = parse_int_list(text)
    if any(k not in (1, 2, 4) for k in ks):
        raise argparse.ArgumentTypeError(f"k must be among 1, 2, 4: {text!r}")
    return ks


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _real_a(values) -> tuple[float, ...]:
    if any(isinstance(a, complex) for a in values):
        raise ValidationError("this command needs real a values")
    return tuple(values)


def _job(args, default_n, default_a) -> report.GridJob:
    tol = report.Tolerances(unit=args.tol) if args.tol is not None else report.Tolerances()
    return report.GridJob(
        n_values=default_n if args.n is None else args.n,
        a_values=_real_a(default_a if args.a is None else args.a),
        k=(1,) if args.k is None else args.k,
        tolerances=tol,
        full_precision=args.full_precision,
        jobs=args.jobs,
    )


def cmd_table(args) -> int:
    job = _job(args, report.TABLE_N, report.TABLE_A)
    rows = report.table_rows(job)
    cols = report.table_columns(job.n_values)
    as_json = args.format == "json"
    records = [report.table_record(r, job.full_precision, as_json) for r in rows]
    if as_json:
        text = report.write_json("table", cols, records, {"k": job.k[0]})
    else:
        text = report.write_csv(cols, records)
    _emit(text, args.out)
    failed = any(None in r.nu_rate.values() for r in rows)
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_roots(args) -> int:
    if any(v is not None and len(v) != 1 for v in (args.n, args.a, args.k)):
        raise ValidationError("roots takes a single n, a and k")
    n = 24 if args.n is None else args.n[0]
    a = 1.0 if args.a is None else args.a[0]
    k = 1 if args.k is None else args.k[0]
    spec = TrinomialSpec(n, a, k)
    tol = args.tol if args.tol is not None else report.UNIT_TOL
    rows = report.roots_records(spec, args.samples, tol)
    if args.format == "json":
        meta = {"n": n, "a": _a_json(a), "k": k}
        text = report.write_json("roots", report.ROOT_COLUMNS, rows, meta)
    else:
        text = report.write_csv(report.ROOT_COLUMNS, rows)
    _emit(text, args.out)
    return EXIT_OK


def _a_json(a):
    if isinstance(a, complex):
        return {"re": a.real, "im": a.imag}
    return float(a)


def cmd_verify(args) -> int:
    job = _job(args, report.VERIFY_N, report.TABLE_A)
    results = report.verify_reports(job)
    as_json = args.format == "json"
    records = [report.verify_record(s, r, as_json) for s, r in results]
    cols = report.VERIFY_COLUMNS
    text = report.write_json("verify", cols, records) if as_json else report.write_csv(cols, records)
    if args.out is not None:
        _emit(text, args.out)

    failures, errors, dead = 0, 0, 0
    for spec, rep in results:
        if not isinstance(rep, AnalysisReport):
            errors += 1
            print(f"ERROR  n={spec.n} a={spec.a} k={spec.k}: {rep}", file=sys.stderr)
            continue
        bad = [name for name, v in rep.checks().items() if v is False]
        if bad:
            failures += 1
            print(f"FAIL   n={spec.n} a={spec.a} k={spec.k}: {', '.join(bad)}", file=sys.stderr)
        if rep.dead_band_roots:
            dead += 1
            print(f"WARN   n={spec.n} a={spec.a} k={spec.k}: {rep.dead_band_roots} root(s) "
                  f"within {job.tolerances.unit:g} of the unit circle", file=sys.stderr)
    if args.out is None:
        _print_matrix(results)
    print(f"{len(results)} cells: {len(results) - failures - errors} pass, {failures} fail, "
          f"{errors} error, {dead} with dead-band roots")
    if errors:
        return EXIT_NUMERICAL
    return EXIT_VERIFY if failures else EXIT_OK


def _print_matrix(results):
    names = ["containment", "annulus", "monotone", "equispacing", "erdos_turan", "limacon"]
    print(f"{'n':>5} {'a':>5} {'k':>2}  " + " ".join(f"{s[:11]:>11}" for s in names))
    for spec, rep in results:
        if isinstance(rep, AnalysisReport):
            cells = [report.verdict(rep.checks()[s]) for s in names]
        else:
            cells = [report.ERROR_MARK] * len(names)
        print(f"{spec.n:>5} {float(spec.a):>5.2f} {spec.k:>2}  "
              + " ".join(f"{c:>11}" for c in cells))


def cmd_limits(args) -> int:
    values = report.TABLE_A if args.a is None else args.a
    if not values:
        raise ValidationError("no a values given")
    tol = args.tol if args.tol is not None else 1e-12
    full = args.full_precision
    as_json = args.format == "json"
    if args.extended:
        cols = ["a", "regime", "measure_limit", "degenerate", "diagnostics"]
        records = []
        for a in values:
            ext = measure_limit_extended(a, rational_angle=args.rational_angle, tol=tol)
            fmt = report.jnum if as_json else report.fmt
            val = fmt(ext.value, report.MEASURE_DIGITS, full)
            records.append([_a_json(a) if as_json else str(a), ext.regime, val,
                            ext.degenerate, "; ".join(ext.diagnostics)])
    else:
        cols = report.LIMIT_COLUMNS
        records = [report.limit_record(a, tol, full, as_json) for a in _real_a(values)]
    text = report.write_json("limits", cols, records) if as_json else report.write_csv(cols, records)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--n", type=parse_int_list, help="comma-separated degrees")
    shared.add_argument("--a", type=parse_a_list,
                        help="comma-separated values or range:start:stop:step")
    shared.add_argument("--k", type=parse_k_list, help="inner exponent(s) among 1,2,4")
    shared.add_argument("--out", help="output path (default stdout)")
    shared.add_argument("--format", choices=("csv", "json"), default="csv")
    shared.add_argument("--tol", type=float,
                        help="unit-circle dead band (table/roots/verify) or "
                             "quadrature tolerance (limits)")
    shared.add_argument("--full-precision", action="store_true",
                        help="print full floats instead of 5/7 decimals")
    shared.add_argument("--jobs", type=int, default=1, help="worker processes for grid cells")

    p = _Parser(prog="trinomials", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("table", parents=[shared], help="rate and measure table over (n, a)") \
        .set_defaults(func=cmd_table)
    r = sub.add_parser("roots", parents=[shared], help="dump roots and curve samples")
    r.add_argument("--samples", type=int, default=720, help="curve / unit circle samples")
    r.set_defaults(func=cmd_roots)
    sub.add_parser("verify", parents=[shared], help="run the structural checks over a grid") \
        .set_defaults(func=cmd_verify)
    lim = sub.add_parser("limits", parents=[shared], help="n -> infinity limits")
    lim.add_argument("--extended", action="store_true",
                     help="allow |a| > 2, a <= 0 and complex a")
    lim.add_argument("--rational-angle", action="store_true",
                     help="assert arg a is a rational multiple of 2 pi")
    lim.set_defaults(func=cmd_limits)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    try:
        return args.func(args)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, NumericalError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
