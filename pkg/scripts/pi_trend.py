"""pi_A(x, t) against sqrt(x)/log(x) for J1, J2, J3 and t in {0, 1}.

Writes one CSV per (curve, t) and prints the least-squares slope and R^2.
"""
import argparse
from pathlib import Path

from frobtrace import stats
from _common import cached_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--xmax", type=int, default=1 << 20)
    ap.add_argument("--curves", nargs="+", default=["J1", "J2", "J3"])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--cache", type=Path, default=Path("results/archives"))
    args = ap.parse_args()
    for label in args.curves:
        arch = cached_sweep(label, args.xmax, args.cache, args.workers)
        for t in (0, 1, -1):
            tab = stats.pi_a(arch, t)
            slope, _, r2 = stats.linear_fit(tab.normalizer, tab.values)
            print(f"{label} t={t:+d} pi(x_max)={int(tab.values[-1])} slope={slope:.4f} R2={r2:.4f}")
            write_csv(args.out_dir / f"pi_{label}_t{t}.csv",
                      ["x", "count", "count_neg_t", "sqrtx_over_logx"],
                      zip(tab.checkpoints.tolist(), tab.values.tolist(),
                          tab.values_neg.tolist(), tab.normalizer.tolist()))


if __name__ == "__main__":
    main()
