"""Run every check over all labeled graphs on the given orders and write a JSON report.

    python scripts/sweep_labeled.py --n 1-7 --output sweep7.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from sdlab.verify import verify_labeled


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="7", help='orders to sweep: "7" or "1-7"')
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--output", help="JSON report path (summary always goes to stdout)")
    args = ap.parse_args()
    lo, _, hi = args.n.partition("-")
    ns = range(int(lo), int(hi or lo) + 1)
    t0 = time.perf_counter()
    report = verify_labeled(ns, jobs=args.jobs)
    for line in report.summary_lines():
        print(line)
    print(f"elapsed: {time.perf_counter() - t0:.1f}s")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, allow_nan=False)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
