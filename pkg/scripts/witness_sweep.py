"""Sweep the three theorem witnesses and tabulate bridge lengths.

Typical run:

    python3 scripts/witness_sweep.py --family all --notpac-max 5
"""

import argparse
import json
import sys

from convexlab import verify_bs1q_notmac, verify_notpac, verify_stallings_witness


def _row(report: dict) -> str:
    cells = [report["witness"], f"q={report.get('q', '-')}",
             f"n={report['n']}", f"R={report['R']}",
             f"bridge={report['bridge']}"]
    if "bridge_no_identity" in report:
        cells.append(f"detour={report['bridge_no_identity']}")
    cells.append("ok" if report["ok"] else
                 "FAIL " + json.dumps(report["checks"]))
    return "\t".join(str(c) for c in cells)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("notpac", "bs1q", "stallings", "all"),
                    default="all")
    ap.add_argument("--notpac-min", type=int, default=2)
    ap.add_argument("--notpac-max", type=int, default=5)
    ap.add_argument("--bs1q", action="append", default=None, metavar="Q,N",
                    help="comma pair, may repeat (default: 7,2 8,2 7,3)")
    args = ap.parse_args(argv)

    reports = []
    if args.family in ("notpac", "all"):
        for n in range(args.notpac_min, args.notpac_max + 1):
            reports.append(verify_notpac(n))
    if args.family in ("bs1q", "all"):
        pairs = [tuple(int(x) for x in spec.split(","))
                 for spec in (args.bs1q or ["7,2", "8,2", "7,3"])]
        for q, n in pairs:
            reports.append(verify_bs1q_notmac(q, n))
    if args.family in ("stallings", "all"):
        reports.append(verify_stallings_witness(1))

    for report in reports:
        print(_row(report))
    bad = [r for r in reports if not r["ok"]]
    print(f"{len(reports) - len(bad)}/{len(reports)} witnesses ok")
    return 0 if not bad else 1


if __name__ == "__main__":
    sys.exit(main())
