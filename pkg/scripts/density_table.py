"""Sato-Tate densities: closed forms for g = 1, 2 next to Monte Carlo, plus g = 3, 4.

Also compares the empirical trace distribution of J1 with the g = 2 density.
"""
import argparse
from pathlib import Path

import numpy as np

from frobtrace import satotate
from _common import cached_sweep, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--points", type=int, default=41)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    ap.add_argument("--cache", type=Path, default=Path("results/archives"))
    args = ap.parse_args()
    xs = np.linspace(-1, 1, args.points)
    closed = {1: satotate.phi_g1, 2: satotate.phi_g2}
    for g in (1, 2, 3, 4):
        res = satotate.mc_density(g, args.samples, args.seed, xs)
        exact = closed[g](xs) if g in closed else np.full_like(xs, np.nan)
        write_csv(args.out_dir / f"density_g{g}.csv", ["x", "phi", "stderr", "closed_form"],
                  zip(xs.tolist(), res.phi.tolist(), res.stderr.tolist(), exact.tolist()))
        mid = args.points // 2
        print(f"g={g} Phi(0) mc={res.phi[mid]:.5f} +- {2 * res.stderr[mid]:.5f}"
              + (f" closed={exact[mid]:.5f}" if g in closed else ""))
    arch = cached_sweep("J1", 1 << 18, args.cache)
    edges, mass = satotate.empirical_density(arch, 20)
    ref = satotate.bin_integrals(satotate.phi_g2, edges)
    write_csv(args.out_dir / "empirical_J1.csv", ["lo", "hi", "mass", "phi_g2_mass"],
              zip(edges[:-1].tolist(), edges[1:].tolist(), mass.tolist(), ref.tolist()))
    sym = np.abs(mass - mass[::-1]).max()
    print(f"J1 to 2^18: max |bin - Phi bin| = {np.abs(mass - ref).max():.4f}, "
          f"max asymmetry = {sym:.4f}")


if __name__ == "__main__":
    main()
