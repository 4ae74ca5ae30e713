#!/usr/bin/env python3
"""Write the g(n, n+1, alpha) curves to CSV and print where each curve crosses 1/2."""
import argparse
import csv
import sys
from collections import defaultdict

import numpy as np

from snspec.figures import emit_fig2_data


def main():
    P = argparse.ArgumentParser(description=__doc__)
    P.add_argument("-o", "--output", default="g_curves.csv")
    P.add_argument("--points", type=int, default=40)
    P.add_argument("--n-max", type=int, default=13)
    args = P.parse_args()

    curves = defaultdict(list)
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["alpha", "n1", "n2", "g"])
        for rec in emit_fig2_data(0.1, 100.0, args.points, args.n_max):
            w.writerow([f"{rec['alpha']:.11e}", rec["n1"], rec["n2"], f"{rec['g']:.11e}"])
            curves[rec["n1"]].append((rec["alpha"], rec["g"]))

    for n, pts in sorted(curves.items()):
        a, g = map(np.array, zip(*pts))
        # g is monotone in alpha over this range, so interpolate in log alpha
        half = float(np.exp(np.interp(0.5, g, np.log(a))))
        print(f"n={n:2d}->{n + 1:2d}  g=1/2 at alpha={half:6.3f}")
    print(f"wrote {args.output}", file=sys.stderr)


if __name__ == "__main__":
    main()
