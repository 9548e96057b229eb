#!/usr/bin/env python3
"""Equivalence-campaign experiment driver.

Runs the primal/dual agreement campaign per sphere dimension and prints a
small table (agreement, ambiguity rate, disjoint/intersecting split, wall
time per instance), then the combined report as JSON.  The `sphsep fuzz`
subcommand is the single-report production interface; this script is for
poking at how the numbers move with dimension and generator count.

Example:
    python scripts/run_campaign.py --count 200 --dims 1,2,3,5 --sizes 1..12
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sphsep.harness import run_equivalence_campaign  # noqa: E402


def parse_ints(text: str) -> list[int]:
    out: list[int] = []
    for token in text.split(","):
        if ".." in token:
            lo, _, hi = token.partition("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif token:
            out.append(int(token))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200, help="instances per dimension")
    ap.add_argument("--dims", default="1,2,3,5")
    ap.add_argument("--sizes", default="1..12")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    dims = parse_ints(args.dims)
    sizes = parse_ints(args.sizes)

    print(f"{'dim':>4} {'inst':>6} {'agree':>6} {'ambig':>6} {'disj':>6} "
          f"{'inter':>6} {'ms/inst':>8}")
    combined = None
    for n in dims:
        start = time.perf_counter()
        report = run_equivalence_campaign(args.count, [n], sizes, args.seed + n)
        wall = time.perf_counter() - start
        print(
            f"{n:>4} {report.instances:>6} {report.agreements:>6} "
            f"{report.ambiguous:>6} {report.disjoint:>6} "
            f"{report.intersecting:>6} {1000 * wall / max(1, report.instances):>8.1f}"
        )
        for failure in report.failures:
            print(f"     failure: {failure}", file=sys.stderr)
        combined = report if combined is None else combined

    start = time.perf_counter()
    full = run_equivalence_campaign(args.count * len(dims), dims, sizes, args.seed)
    full.wall_time_s = time.perf_counter() - start
    print(f"\ncombined ({full.instances} instances, {full.wall_time_s:.1f}s):")
    print(json.dumps(full.to_dict(), indent=2))
    return 1 if full.disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
