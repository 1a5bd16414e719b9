"""Convexity scan driver: fmax(r) table, pair counts, sublinearity probe.

Typical run:

    python3 scripts/scan_bs2.py --r-min 3 --r-max 10 --csv out/scan.csv
"""

import argparse
import sys

from convexlab import (BsGroupModel, BsParams, build_ball, scan,
                       sublinearity_probe, write_csv)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--r-min", type=int, default=3)
    ap.add_argument("--r-max", type=int, default=10)
    ap.add_argument("--cap", type=int, default=2_000_000)
    ap.add_argument("--csv", default=None, help="also write the table here")
    args = ap.parse_args(argv)

    model = BsGroupModel(BsParams(args.q))
    ball = build_ball(model, args.r_max, cap=args.cap)
    report = scan(model, args.r_min, args.r_max, ball=ball)

    print("r\tfmax\tpairs\t2r-2\twitness")
    for row in report.rows:
        witness = f"{row.witness_x} | {row.witness_y}" if row.pairs else "-"
        print(f"{row.r}\t{row.fmax}\t{row.pairs}\t{2 * row.r - 2}\t{witness}")
    probe = sublinearity_probe(report)
    print(f"probe: slope {probe.slope:.4f} intercept {probe.intercept:.4f} "
          f"over {probe.points} radii")
    if args.csv:
        write_csv(report, args.csv)
        print(f"csv: {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
