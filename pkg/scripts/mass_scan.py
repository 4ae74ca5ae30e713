#!/usr/bin/env python3
"""Line frequencies of a trapped particle versus mass, with the regime of each mass."""
import argparse
import math

from snspec.constants import CODATA
from snspec.experiment import scan_spectrum
from snspec.materials import lookup_material


def main():
    P = argparse.ArgumentParser(description=__doc__)
    P.add_argument("--material", default="osmium")
    P.add_argument("--f0", type=float, default=10.0, help="trap frequency in Hz")
    P.add_argument("--points", type=int, default=41)
    P.add_argument("--n-max", type=int, default=13)
    P.add_argument("--workers", type=int, default=1)
    args = P.parse_args()

    mat = lookup_material(args.material)
    omega0 = 2 * math.pi * args.f0
    scan = scan_spectrum(mat, omega0, 1e13 * CODATA.amu, 1e18 * CODATA.amu,
                         args.points, args.n_max, workers=args.workers)

    print(f"{'mass/amu':>10} {'alpha':>8}  regime        lowest line offset / mHz")
    for p in scan.points:
        lines = " ".join(f"{ln.delta_omega / (2 * math.pi) * 1e3:.3f}" for ln in p.lines[:4])
        print(f"{p.mass / CODATA.amu:10.3e} {p.alpha:8.3f}  {p.regime:12s}  {lines} ...")

    band = scan.intermediate_band()
    if band:
        lo, hi = band
        print(f"\nintermediate band: {lo / CODATA.amu:.3g} .. {hi / CODATA.amu:.3g} amu "
              f"({math.log10(hi / lo):.2f} decades)")


if __name__ == "__main__":
    main()
