#!/usr/bin/env python3
"""Convergence of the recursive-tree constant c17 in the enumeration cutoff,
with the power-sum route as an independent cross-check."""

import argparse
import time

from fringetrees.constants import PUBLISHED, c17_power_sums, c17_series


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--smax", type=int, nargs="+", default=[10, 12, 14, 16])
    ap.add_argument("--power-sums", type=int, default=40, help="size cutoff for the cross-check (0 to skip)")
    args = ap.parse_args()
    print(f"published {PUBLISHED['c17']}")
    for s in args.smax:
        t0 = time.perf_counter()
        r = c17_series(S_max=s)
        print(f"S_max={s:3d}  {r.value:.12f} +- {r.error:.1e}  contains published: "
              f"{r.contains(PUBLISHED['c17'])}  [{time.perf_counter() - t0:.1f}s]")
    if args.power_sums:
        t0 = time.perf_counter()
        r = c17_power_sums(S_max=args.power_sums)
        print(f"power sums S_max={args.power_sums}: {r.value:.12f} +- {r.error:.1e}  [{time.perf_counter() - t0:.1f}s]")


if __name__ == "__main__":
    main()
