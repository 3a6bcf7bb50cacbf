"""min over x in A_k of I(chi_{B_k})(x) / |x|^beta(x) for a range of k.

A flat profile means the Riesz potential of a ball indicator scales like
|x|^beta on its own annulus, which is what lower-bound arguments use.
"""

import argparse

import numpy as np

from herzmorrey.config import parse_exponent
from herzmorrey.geometry import build_grid
from herzmorrey.operators import riesz_lower_bound_profile


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", action="append", help="order descriptor (repeatable)")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--k-range", default="-6:6")
    ap.add_argument("--samples", type=int, default=16, help="sample radii per annulus")
    args = ap.parse_args()
    betas = args.beta or ["const:0.5", "logdecay:0.4:0.3", "logdecay:0.2:0.6"]
    lo, hi = (int(v) for v in args.k_range.split(":"))
    grid = build_grid(args.n, -40, 40, 16)
    for desc in betas:
        beta = parse_exponent(desc, "order", args.n)
        prof = riesz_lower_bound_profile(beta, grid, range(lo, hi + 1), args.samples)
        vals = np.array(list(prof.values()))
        print(f"beta = {desc}: min {vals.min():.5g}, max/min {vals.max() / vals.min():.4f}")
        for k, v in prof.items():
            print(f"  k = {k:>3}  {v:.6g}")


if __name__ == "__main__":
    main()
