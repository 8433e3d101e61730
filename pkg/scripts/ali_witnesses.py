"""List graphs attaining the Cauchy-Schwarz deviation bound and whether each is bipartite.

Witnesses are grouped by degree sequence and bipartiteness, with a count of
labelings and one example each, so the output stays short even for n = 7.

    python scripts/ali_witnesses.py --n 7
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from sdlab.graph import parse_graph6
from sdlab.verify import equality_hunt


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    args = ap.parse_args()
    hits = equality_hunt("ali", ns=range(1, args.n + 1))
    kinds: Counter = Counter()
    example = {}
    for h in hits:
        g = parse_graph6(h.graph)
        key = (g.n, g.m, tuple(sorted(g.degrees(), reverse=True)), h.bipartite)
        kinds[key] += 1
        example.setdefault(key, h.graph)
    print("n  m  degrees  bipartite  labelings  example")
    for key in sorted(kinds):
        n, m, degs, bip = key
        print(f"{n}  {m}  {''.join(map(str, degs))}  {bip}  {kinds[key]}  {example[key]}")
    nonbip = sum(c for k, c in kinds.items() if not k[3])
    print(f"# {len(hits)} witnesses, {nonbip} non-bipartite", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
