#!/usr/bin/env python3
"""Reproduce both published per-hop power allocation tables as CSV."""

import argparse
import sys

from plsroute.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".")
    args = parser.parse_args()
    for fixture in ("table1", "table2"):
        rc = cli([
            "table-fixture", "--fixture", fixture,
            "--out", f"{args.outdir}/{fixture}.csv",
        ])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
