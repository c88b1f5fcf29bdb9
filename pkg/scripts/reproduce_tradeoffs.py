#!/usr/bin/env python3
"""Reproduce the closed-form tradeoff sweeps.

tradeoff_curve.csv: (COP, SOP) pairs along a power sweep for a 5-hop path
at hop lengths 3, 4 and 5.  optimal_tradeoff.csv: the optimal outage value
and the per-hop powers of both allocation problems versus the constraint
level beta.
"""

import argparse
import sys

from plsroute.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".")
    args = parser.parse_args()

    rc = cli([
        "tradeoff-curve",
        "--lambda-e", "1e-3",
        "--distances", "3,4,5",
        "--out", f"{args.outdir}/tradeoff_curve.csv",
    ])
    if rc != 0:
        return rc
    return cli([
        "optimal-tradeoff",
        "--distances", "5",
        "--out", f"{args.outdir}/optimal_tradeoff.csv",
    ])


if __name__ == "__main__":
    sys.exit(main())
