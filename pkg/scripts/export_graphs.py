#!/usr/bin/env python3
"""Write position and state graphs for a range of board sizes.

Produces one file per size and format under the output directory.
Position graphs are the classic triangle-of-triangles pictures; state
graphs carry the mover bookkeeping (banned disk and the two
moved-at-least-once flags) and are much larger.

Example:
    python3 scripts/export_graphs.py --max-disks 4 --out graphs/
    dot -Tsvg graphs/positions_n3.dot -o n3.svg
"""

import argparse
from pathlib import Path

from hanoiduel import Ending, GameConfig, export_graph


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-disks", type=int, default=3)
    ap.add_argument("--pegs", type=int, default=3)
    ap.add_argument("--ec", type=int, default=1)
    ap.add_argument("--out", default="graphs")
    ap.add_argument("--states", action="store_true",
                    help="also write the state-level graphs")
    ap.add_argument("--highlight", action="store_true",
                    help="mark the minimal transfer route in the DOT output")
    args = ap.parse_args()

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for disks in range(1, args.max_disks + 1):
        cfg = GameConfig(disks=disks, pegs=args.pegs, ending=Ending(args.ec))
        for fmt in ("dot", "json"):
            text = export_graph(
                cfg, fmt=fmt, highlight_minimal=args.highlight
            )
            path = outdir / f"positions_n{disks}.{fmt}"
            path.write_text(text)
            written.append(path)
        if args.states:
            path = outdir / f"states_n{disks}.dot"
            path.write_text(export_graph(cfg, fmt="dot", level="state"))
            written.append(path)
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
