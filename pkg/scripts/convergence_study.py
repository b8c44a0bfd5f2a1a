#!/usr/bin/env python3
"""How fast nu/n and M(x^n - a x - 1) approach their limits as n grows.

    python scripts/convergence_study.py --a 0.5,1,1.5,2 --n 50,100,200,400,800
"""

import argparse
import sys

from trinomials import TrinomialSpec, count_outside_unit, mahler_measure, solve
from trinomials.cli import parse_a_list, parse_int_list
from trinomials.limits import measure_limit_quadrature, rate_limit


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=parse_a_list, default=(0.5, 1.0, 1.5, 2.0))
    ap.add_argument("--n", type=parse_int_list, default=(50, 100, 150, 300, 600, 1000))
    args = ap.parse_args(argv)

    print("a,n,rate,rate_error,mahler,mahler_error")
    for a in args.a:
        r_lim, m_lim = rate_limit(a), measure_limit_quadrature(a)
        for n in args.n:
            rs = solve(TrinomialSpec(n, a))
            nu, _ = count_outside_unit(rs)
            m = mahler_measure(rs)
            print(f"{a},{n},{nu / n:.6f},{nu / n - r_lim:+.3e},{m:.10f},{m - m_lim:+.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
