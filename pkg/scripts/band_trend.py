#!/usr/bin/env python3
"""Median normalized distinct-subtree counts over a range of sizes, next to the
theoretical band of a setting.  Replicates scale as reps * max(sizes) / n so
that every size gets the same amount of work."""

import argparse

from fringetrees.canonical import IsoNotion
from fringetrees.experiments import census_one, compare_to_theory


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="bst")
    ap.add_argument("--setting", default="inc-family:bst")
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--reps", type=int, default=25, help="replicates at the largest size")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    sizes = [int(float(x)) for x in args.sizes.split(",")]
    recs = []
    for n in sizes:
        reps = max(1, args.reps * max(sizes) // n)
        recs += [census_one(args.family, n, r, args.seed, (IsoNotion.AS_FAMILY,), hist_cap=0) for r in range(reps)]
    print("n,replicates,median,lower,upper,inside")
    for row in compare_to_theory(recs, args.setting):
        print(f"{row['n']},{row['replicates']},{row['median']:.5f},{row['lower']:.5f},{row['upper']:.5f},{row['inside']}")


if __name__ == "__main__":
    main()
