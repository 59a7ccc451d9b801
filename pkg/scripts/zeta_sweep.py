"""Sweep the resolvent zeta of T_z along the real axis.

Writes s, the closed form, the independent continuation and (inside the
convergence region) direct quadrature.  Poles are reported as empty cells.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from ztriple import triples, zdim
from ztriple.errors import ZTripleError


def _try(fn, *args):
    try:
        return complex(fn(*args)).real
    except ZTripleError:
        return None


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=float, default=3.0)
    ap.add_argument("--s-min", type=float, default=-6.0)
    ap.add_argument("--s-max", type=float, default=10.0)
    ap.add_argument("--n", type=int, default=65)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    t = zdim.tz_triple(args.z)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh)
    w.writerow(["s", "closed", "continued", "quadrature"])
    for s in np.linspace(args.s_min, args.s_max, args.n):
        quad = _try(triples.zeta_trace, t, s) if s > args.z + 0.1 else None
        w.writerow([f"{s:.6g}", _try(zdim.zeta_closed, args.z, s), _try(zdim.zeta_continued, args.z, s), quad])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
