"""Certified gaps phi - lambda_k and phi - beta1(k) over a range of k, as CSV.

    python scripts/convergence_sweep.py --k-max 128 > convergence.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction

import mpmath

from plastic.boundslab import beta_limits, convergence_ok, convergence_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-max", type=int, default=64)
    parser.add_argument("--bits", type=int, default=80, help="enclosure width 2^-bits")
    args = parser.parse_args()

    table = convergence_table(args.k_max, Fraction(1, 2**args.bits))
    betas = {row.k: row for row in beta_limits(args.k_max)}
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["k", "gap_lower", "gap_upper", "k_times_gap", "phi_minus_beta1"])
    for row in table:
        gap = (row.gap_lower + row.gap_upper) / 2
        writer.writerow([
            row.k,
            f"{float(row.gap_lower):.12e}",
            f"{float(row.gap_upper):.12e}",
            f"{float(row.k * gap):.8f}",
            mpmath.nstr(betas[row.k].phi_gap, 12),
        ])
    ok = convergence_ok(table)
    print(f"strictly decreasing and positive: {ok}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
