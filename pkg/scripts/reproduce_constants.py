#!/usr/bin/env python3
"""Print every asymptotic constant with its error bound and the published value."""

import argparse
import time

from fringetrees.constants import constant_ids, theorem_constant


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ids", nargs="*", help="constant ids (default: all)")
    args = ap.parse_args()
    print(f"{'id':>14} {'value':>18} {'error':>9} {'published':>14} {'|dev|':>9}  seconds")
    for cid in args.ids or constant_ids():
        t0 = time.perf_counter()
        r = theorem_constant(cid)
        secs = time.perf_counter() - t0
        pub = "" if r.published is None else f"{r.published:.10f}"
        ratio = "" if r.published is None else f"{r.deviation():.1e}"
        print(f"{cid:>14} {r.value:18.12f} {r.error:9.1e} {pub:>14} {ratio:>9}  {secs:.2f}")


if __name__ == "__main__":
    main()
