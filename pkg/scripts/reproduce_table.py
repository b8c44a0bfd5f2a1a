#!/usr/bin/env python3
"""Recompute the rate/measure table and diff it against the stored reference.

    python scripts/reproduce_table.py [--reference tests/fixtures/reference_table.csv]

Prints every cell side by side and exits nonzero if any rate differs at
the printed precision or any measure is off by more than 5e-7.
"""

import argparse
import csv
import sys
from pathlib import Path

from trinomials.report import TABLE_A, TABLE_N, GridJob, table_rows

ROOT = Path(__file__).resolve().parent.parent


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reference", type=Path, default=ROOT / "tests/fixtures/reference_table.csv")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    with open(args.reference) as fh:
        ref = {float(r["a"]): r for r in csv.DictReader(fh)}
    rows = table_rows(GridJob(TABLE_N, TABLE_A, jobs=args.jobs))

    bad = 0
    print(f"{'a':>4} {'n':>4} {'rate':>8} {'table':>8} {'M':>10} {'table':>10}  diff")
    for row in rows:
        r = ref[row.a]
        for n in TABLE_N:
            cell = r[f"nu_rate_n{n}"]
            digits = len(cell.split(".")[1])
            rate_ok = round(row.nu_rate[n], digits) == float(cell)
            diff = row.mahler[n] - float(r[f"mahler_n{n}"])
            flag = "" if rate_ok and abs(diff) <= 5e-7 else "  <-- mismatch"
            bad += bool(flag)
            print(f"{row.a:4.1f} {n:4d} {row.nu_rate[n]:8.5f} {cell:>8} "
                  f"{row.mahler[n]:10.7f} {r[f'mahler_n{n}']:>10} {diff:+.1e}{flag}")
    print(f"{bad} mismatching cells out of {len(rows) * len(TABLE_N)}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
