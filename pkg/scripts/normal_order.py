"""Mean nu(a1) per dyadic interval and the nu histograms of J1.

Compares the histograms with the published bucket counts and reports the
Erdos-Kac CDF distance and normalised moments.
"""
import argparse
import math
from pathlib import Path

import numpy as np

from frobtrace import stats
from _common import cached_sweep, write_csv

PUBLISHED = {
    "left": {0: 166, 1: 16787, 2: 40083, 3: 20214, 4: 1673},
    "right": {0: 54, 1: 12915, 2: 35388, 3: 22358, 4: 2833, 5: 9},
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--curves", nargs="+", default=["J1"])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--cache", type=Path, default=Path("results/archives"))
    args = ap.parse_args()
    x_max = 1 << 21
    for label in args.curves:
        arch = cached_sweep(label, x_max, args.cache, args.workers)
        sieve = stats.SpfSieve.for_archive(arch)
        means = stats.nu_dyadic_means(arch, 21, sieve)
        write_csv(args.out_dir / f"nu_means_{label}.csv", ["i", "mean_nu", "loglog_2^(i-1)", "loglog_2^i"],
                  [(i, m, math.log(math.log(2 ** (i - 1))) if i > 2 else "", math.log(math.log(2**i)))
                   for i, m in means.items()])
        for side, rng in (("left", (0, 1 << 20)), ("right", ((1 << 20) + 1, 1 << 21))):
            hist = stats.nu_histogram(arch, rng, sieve)
            write_csv(args.out_dir / f"nu_hist_{label}_{side}.csv", ["nu", "count"], sorted(hist.items()))
            if label == "J1":
                verdict = "match" if hist == PUBLISHED[side] else f"differs from {PUBLISHED[side]}"
                print(f"J1 {side}: {hist} ({verdict})")
        res = stats.ek_cdf(arch, np.arange(-2, 2.001, 0.25))
        write_csv(args.out_dir / f"ek_{label}.csv", ["tau", "empirical", "normal"],
                  zip(res.tau.tolist(), res.empirical.tolist(), res.normal.tolist()))
        print(f"{label} EK sup distance {res.sup_distance:.4f}; moments "
              + " ".join(f"k{k}={v:.3f}" for k, v in stats.ek_moments(arch, 4, sieve).items()))


if __name__ == "__main__":
    main()
