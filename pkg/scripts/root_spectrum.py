"""Moduli of all roots of F_k for a range of k, with the spectral gap.

    python scripts/root_spectrum.py --k-min 3 --k-max 30
"""

from __future__ import annotations

import argparse
import csv
import sys

import mpmath

from plastic.rootlab import all_roots, classify


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-min", type=int, default=3)
    parser.add_argument("--k-max", type=int, default=30)
    parser.add_argument("--digits", type=int, default=50)
    args = parser.parse_args()

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["k", "kind", "lambda", "max_conjugate_modulus", "min_conjugate_modulus",
                     "unit_roots", "residual_bound"])
    for k in range(args.k_min, args.k_max + 1):
        rs = all_roots(k, args.digits)
        res = classify(k, args.digits)
        moduli = rs.conjugate_moduli()
        writer.writerow([
            k,
            res.kind.value,
            mpmath.nstr(rs.dominant, 15),
            mpmath.nstr(max(moduli), 15),
            mpmath.nstr(min(moduli), 15),
            len(rs.unit_roots),
            mpmath.nstr(rs.residual_bound, 3),
        ])
    return 0


if __name__ == "__main__":
    sys.exit(main())
