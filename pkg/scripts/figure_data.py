"""Write the data behind both figures as CSV files into a directory.

    python scripts/figure_data.py --out figures/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from sdlab.cli import run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--points", type=int, default=300)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    code = run(["figure1", "--delta", "1", "--Delta", "10", "--points", str(args.points),
                "--format", "csv", "--output", str(out / "figure1.csv")])
    code = code or run(["figure2", "--points", str(args.points), "--format", "csv",
                        "--output", str(out / "figure2.csv")])
    print(f"wrote {out / 'figure1.csv'} and {out / 'figure2.csv'}")
    return code


if __name__ == "__main__":
    sys.exit(main())
