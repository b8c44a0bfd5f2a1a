#!/usr/bin/env python3
"""Write root, curve and unit-circle CSVs for the root-plot figures.

One file per polynomial: x^24 - x - 1 with its k = 2, 4 variants, and
x^24 - 1 (not of the form x^n - a x^k - 1 with a > 0, so solved from its
coefficients and drawn against the unit circle only).  Plotting is left
to external tools.
"""

import argparse
import math
import sys
from pathlib import Path

from trinomials import TrinomialSpec, solve
from trinomials.report import ROOT_COLUMNS, roots_records, write_csv

CASES = [
    ("x24_minus_x_minus_1", TrinomialSpec(24, 1.0, 1)),
    ("x24_minus_x2_minus_1", TrinomialSpec(24, 1.0, 2)),
    ("x24_minus_x4_minus_1", TrinomialSpec(24, 1.0, 4)),
]


def unit_roots_rows(n):
    rs = solve([1] + [0] * (n - 1) + [-1])
    return [["root", float(z.real), float(z.imag), float(r), float(p), False]
            for z, r, p in zip(rs.roots, rs.rho, rs.phi)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("figure_data"))
    ap.add_argument("--samples", type=int, default=720)
    args = ap.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for name, spec in CASES:
        path = args.out_dir / f"{name}.csv"
        path.write_text(write_csv(ROOT_COLUMNS, roots_records(spec, args.samples, 1e-10)))
        print(f"wrote {path}")
    path = args.out_dir / "x24_minus_1.csv"
    circle = [["unit", math.cos(t), math.sin(t), 1.0, t, None]
              for t in (2 * math.pi * j / args.samples for j in range(args.samples))]
    path.write_text(write_csv(ROOT_COLUMNS, unit_roots_rows(24) + circle))
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
