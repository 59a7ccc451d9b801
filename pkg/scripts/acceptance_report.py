"""Run every acceptance criterion and write a table (stdout, optional CSV)."""

from __future__ import annotations

import argparse
import csv
import sys
import time

from ztriple.acceptance import SUITES, run_suite


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", choices=sorted(SUITES), default="all")
    ap.add_argument("--csv", help="also write the rows to this file")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    results = run_suite(args.suite)
    for r in results:
        print(r.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria pass ({time.perf_counter() - t0:.2f} s)")

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(results[0].row()))
            w.writeheader()
            for r in results:
                w.writerow(r.row())
    return 0 if n_pass == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
