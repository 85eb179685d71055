"""Measured versus predicted decay of the dominant-root approximation error.

For each k the relative error |a_n - C lambda^n| / a_n is reduced to windowed
maxima, whose per-step ratio should match max|mu| / lambda over the
non-dominant roots mu.

    python scripts/fit_decay.py --k-max 10 --n-max 400
"""

from __future__ import annotations

import argparse
import csv
import sys

import mpmath

from plastic.boundslab import dominant_fit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k-max", type=int, default=10)
    parser.add_argument("--n-max", type=int, default=400)
    parser.add_argument("--digits", type=int, default=80)
    args = parser.parse_args()

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["k", "C", "decay_ratio", "predicted_ratio", "relative_mismatch"])
    for k in range(3, args.k_max + 1):
        fit = dominant_fit(k, max(args.n_max, 4 * k), args.digits)
        with mpmath.workdps(args.digits):
            mismatch = abs(fit.decay_ratio - fit.predicted_ratio) / fit.predicted_ratio
        writer.writerow([
            k,
            mpmath.nstr(fit.C, 15),
            mpmath.nstr(fit.decay_ratio, 8),
            mpmath.nstr(fit.predicted_ratio, 8),
            mpmath.nstr(mismatch, 3),
        ])
    return 0


if __name__ == "__main__":
    sys.exit(main())
