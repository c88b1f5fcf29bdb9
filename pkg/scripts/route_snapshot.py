#!/usr/bin/env python3
"""Route one random 20-node snapshot both ways and save the scenario.

Emits route.csv (hop-by-hop powers for both allocation objectives) and
scenario.txt, which can be replayed bit-for-bit with
``plsroute route-demo --scenario-in scenario.txt``.
"""

import argparse
import sys

from plsroute.cli import main as cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default=".")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--max-range", type=float, default=8.0)
    args = parser.parse_args()
    return cli([
        "route-demo",
        "--seed", str(args.seed),
        "--max-range", str(args.max_range),
        "--out", f"{args.outdir}/route.csv",
        "--scenario-out", f"{args.outdir}/scenario.txt",
    ])


if __name__ == "__main__":
    sys.exit(main())
