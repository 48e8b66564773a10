#!/usr/bin/env python3
"""Run a normalized density ladder for a polynomial and print a CSV table of
count([N, 2N)) * sqrt(log N) / N, with the sums-of-two-squares sieve as an
optional reference column.

Usage:
    python3 scripts/density_ladder.py --poly "x^6 + y^6" --ladder 1e4,1e5,1e6
    python3 scripts/density_ladder.py --poly "x^2 + y^2" --ladder 1e3,1e4 --baseline
"""

import argparse
import math
import sys

from sexticlab.density import landau_baseline, stanley_probe
from sexticlab.parser import parse


def _ladder(text: str) -> list[int]:
    return [int(float(s)) for s in text.split(",")]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--poly", required=True, help="polynomial expression in x, y")
    ap.add_argument("--ladder", default="1e3,1e4,1e5", help="comma list of N values")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--baseline", action="store_true",
                    help="append the two-squares sieve ratio at each N")
    args = ap.parse_args(argv)

    F = parse(args.poly)
    Ns = _ladder(args.ladder)
    probe = stanley_probe(F, Ns, workers=args.workers)

    header = "N,count,normalized"
    if args.baseline:
        header += ",two_squares_ratio"
    print(header)
    for N, count, norm in probe["rows"]:
        line = f"{N},{count},{norm:.12g}"
        if args.baseline:
            _c, ratio = landau_baseline(max(N, 100))
            line += f",{ratio:.12g}"
        print(line)
    verdict = "bounded-looking" if probe["bounded_looking"] else "still growing"
    print(f"# normalized tail is {verdict}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
