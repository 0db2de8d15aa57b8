"""Run every verification suite with default parameters and write JSON reports.

Usage: python scripts/run_all_suites.py [OUT_DIR] [--jobs K] [--trials N]
"""

import argparse
import sys

from wittquot.cli import main

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("out", nargs="?", default="reports")
ap.add_argument("--jobs", type=int, default=1)
ap.add_argument("--trials", type=int, default=100)
ap.add_argument("--seed", type=int, default=0)
args = ap.parse_args()
sys.exit(main(["run", "--suite", "all", "--out", args.out, "--jobs", str(args.jobs), "--trials", str(args.trials), "--seed", str(args.seed)]))
