#!/usr/bin/env python3
"""Reproduce the Monte Carlo validation sweeps for both outage formulas.

Writes validate_cop.csv and validate_sop.csv into --outdir.  The default
round count is the desk-scale 10^6; pass --paper-scale for the published
10^7 (slow) or --rounds for something smaller.
"""

import argparse
import sys

from plsroute.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--rounds", type=int, default=None)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--paper-scale", action="store_true")
    args = parser.parse_args()

    scale = []
    if args.rounds is not None:
        scale = ["--rounds", str(args.rounds)]
    elif args.paper_scale:
        scale = ["--paper-scale"]
    common = ["--seed", str(args.seed), "--threads", str(args.threads), *scale]

    rc = cli([
        "validate-cop", *common,
        "--lambda-j-grid", "1e-4,1e-3,1e-2",
        "--distances", "3,4,5",
        "--out", f"{args.outdir}/validate_cop.csv",
    ])
    if rc != 0:
        return rc
    return cli([
        "validate-sop", *common,
        "--lambda-j-grid", "1e-3,1e-2",
        "--lambda-e-grid", "1e-4,2e-4,5e-4,1e-3",
        "--out", f"{args.outdir}/validate_sop.csv",
    ])


if __name__ == "__main__":
    sys.exit(main())
