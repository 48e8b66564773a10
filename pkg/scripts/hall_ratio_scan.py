#!/usr/bin/env python3
"""Scan for integer points with a small cubic gap |y^2 - x^3| and report the
gap ratio |y^2 - x^3| / sqrt(x) alongside the structured curve families.

Usage:
    python3 scripts/hall_ratio_scan.py --xmax 200000 --threshold 5
    python3 scripts/hall_ratio_scan.py --family danilov --count 12
"""

import argparse
import sys

from sexticlab.eclab import danilov_family, format_family_csv, hall_scan, rouse_family


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=("scan", "danilov", "rouse"), default="scan")
    ap.add_argument("--xmax", type=int, default=10**5, help="scan limit (scan mode)")
    ap.add_argument("--threshold", type=int, default=5,
                    help="keep points with gap^2 <= threshold^2 * x")
    ap.add_argument("--count", type=int, default=10, help="family members (danilov)")
    ap.add_argument("--b1", type=int, default=1, help="curve parameter (rouse)")
    ap.add_argument("--rmax", type=int, default=8, help="family sweep limit (rouse)")
    args = ap.parse_args(argv)

    if args.family == "danilov":
        rows = danilov_family(args.count)
        print(format_family_csv(rows), end="")
    elif args.family == "rouse":
        rows = rouse_family(args.b1, 0, range(1, args.rmax + 1))
        print(format_family_csv(rows, with_r=True), end="")
    else:
        rows = hall_scan(args.xmax, args.threshold)
        print(format_family_csv(rows), end="")
        print(f"# {len(rows)} points with gap <= {args.threshold} sqrt(x), "
              f"x <= {args.xmax}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
