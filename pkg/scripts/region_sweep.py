#!/usr/bin/env python3
"""Classify the two-disk scoring plane and write it as CSV.

Sweeps w12 and w13 over a rational grid while w23 stays fixed, asking
for each point whether the first player can force a positive final
score.  With --check every point is also confirmed by bounded search,
which is slower but independent of the closed-form classifier.

Example:
    python3 scripts/region_sweep.py --ec 1 --w23 -3 --grid -5:5:0.5 --check
"""

import argparse
import csv
import sys
from fractions import Fraction

from hanoiduel import (
    GameConfig,
    Outcome,
    Weights,
    bounded_scoring_search,
    build_graph,
    parse_ending,
    scoring_verdict,
)


def fuse_dash_values(argv: list[str]) -> list[str]:
    """Join option values that start with a minus sign, like --grid -5:5:1."""
    fused = []
    skip = False
    for here, nxt in zip(argv, argv[1:] + [""]):
        if skip:
            skip = False
            continue
        if here in ("--grid", "--w23") and len(nxt) > 1 and nxt[0] == "-" and nxt[1].isdigit():
            fused.append(f"{here}={nxt}")
            skip = True
        else:
            fused.append(here)
    return fused


def grid_values(spec: str) -> list[Fraction]:
    try:
        lo, hi, step = (Fraction(part) for part in spec.split(":"))
    except ValueError as exc:
        raise SystemExit(f"bad grid spec {spec!r}: {exc}")
    if step <= 0 or hi < lo:
        raise SystemExit(f"bad grid spec {spec!r}")
    values = []
    v = lo
    while v <= hi:
        values.append(v)
        v += step
    return values


def main() -> int:
    ap = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--ec", default="1", help="ending condition (1-5 or name)")
    ap.add_argument("--w23", type=Fraction, default=Fraction(-3))
    ap.add_argument("--grid", default="-5:5:0.5", help="lo:hi:step for w12 and w13")
    ap.add_argument("--bound", type=int, default=30,
                    help="search depth used with --check")
    ap.add_argument("--check", action="store_true",
                    help="cross-check every point with bounded search")
    ap.add_argument("-o", "--output", default="-", help="CSV file (default stdout)")
    args = ap.parse_args(fuse_dash_values(sys.argv[1:]))

    ending = parse_ending(args.ec)
    cfg = GameConfig(disks=2, pegs=3, ending=ending)
    graph = build_graph(cfg) if args.check else None
    values = grid_values(args.grid)

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(out)
    header = ["w12", "w13", "outcome"]
    if args.check:
        header.append("search_agrees")
    writer.writerow(header)

    disagreements = 0
    for w12 in values:
        for w13 in values:
            w = Weights(w12, w13, args.w23)
            outcome = scoring_verdict(cfg, w).outcome
            row = [str(w12), str(w13), outcome.value]
            if args.check:
                found = bounded_scoring_search(
                    cfg, w, args.bound, graph=graph
                ).win_found
                agrees = found == (outcome is Outcome.FIRST_WIN)
                row.append("yes" if agrees else "NO")
                disagreements += 0 if agrees else 1
            writer.writerow(row)
    if out is not sys.stdout:
        out.close()

    if args.check:
        print(
            f"checked {len(values) ** 2} points, {disagreements} disagreement(s)",
            file=sys.stderr,
        )
    return 1 if disagreements else 0


if __name__ == "__main__":
    raise SystemExit(main())
