"""Compare the residues at s = z of the three zeta functions of T_z.

For each z the table lists the stated closed-form value pi^(z/2)/Gamma(z/2),
the contour residue of the closed-form resolvent zeta, the infra-red cutoff
residue and the smoothed-operator residue, together with their ratios.
"""

from __future__ import annotations

import argparse

import numpy as np

from ztriple import zdim


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z-min", type=float, default=0.5)
    ap.add_argument("--z-max", type=float, default=8.0)
    ap.add_argument("--n", type=int, default=16)
    args = ap.parse_args(argv)

    header = f"{'z':>6} {'stated':>14} {'contour':>14} {'cutoff':>14} {'E_z':>14} {'contour/stated':>15} {'E_z/cutoff':>12}"
    print(header)
    print("-" * len(header))
    for z in np.linspace(args.z_min, args.z_max, args.n):
        stated = zdim.zeta_residue(z)
        contour = zdim.zeta_residue_numeric(z).residue.real
        cutoff = zdim.cutoff_residue(z)
        ez = zdim.ez_residue_numeric(z)
        print(
            f"{z:6.3f} {stated:14.10f} {contour:14.10f} {cutoff:14.10f} {ez:14.10f} "
            f"{contour / stated:15.12f} {ez / cutoff:12.9f}"
        )


if __name__ == "__main__":
    main()
