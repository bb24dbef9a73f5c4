"""Euler products P_{g,t} for g in {1, 2}, t in {0, 1} at increasing cutoffs."""
import argparse
from pathlib import Path

from frobtrace.euler import euler_product
from _common import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()
    rows = []
    for g in (1, 2):
        for t in (0, 1):
            for L in (10**3, 10**4, 10**5, 10**6):
                est = euler_product(g, t, L)
                lo, hi = est.interval
                rows.append((g, t, L, f"{est.partial:.10f}", f"{lo:.10f}", f"{hi:.10f}"))
                print(f"P_{g},{t}  L={L:>7}  {est.partial:.10f}  [{lo:.10f}, {hi:.10f}]")
    write_csv(args.out_dir / "euler_products.csv", ["g", "t", "L", "partial", "lower", "upper"], rows)


if __name__ == "__main__":
    main()
