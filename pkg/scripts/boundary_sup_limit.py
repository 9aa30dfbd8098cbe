"""Brute-force sup of |Psi|^2 at (0, r, 1 - r) against 1/(1 - r), and the
radial approach of exp(-u) to 1 - r from inside the tetrablock."""

import argparse
import math
from dataclasses import dataclass

from hexablock import TetraPoint
from hexablock.hexa import fiber_weight, psi_sup_bruteforce


@dataclass(frozen=True)
class Config:
    radii: tuple[float, ...] = (0.25, 0.5, 0.75)
    schedules: tuple[int, ...] = (8, 12, 16, 24)
    gaps: tuple[float, ...] = (1e-2, 1e-4, 1e-6, 1e-8, 1e-10)


def main(cfg: Config) -> None:
    print("r,n_radial,sup,target,deficit")
    for r in cfg.radii:
        target = 1 / (1 - r)
        for k in cfg.schedules:
            sup = psi_sup_bruteforce(TetraPoint(0, r, 1 - r), n_radial=k)
            print(f"{r},{k},{sup:.12f},{target:.12f},{target - sup:.3e}")
    print()
    print("r,gap,exp_minus_u,limit,error,sqrt_gap")
    for r in cfg.radii:
        for gap in cfg.gaps:
            rho = 1 - gap
            w = fiber_weight(TetraPoint(0, rho * r, rho**2 * (1 - r)))
            print(f"{r},{gap:.0e},{w:.12f},{1 - r},{abs(w - (1 - r)):.3e},{math.sqrt(gap):.1e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radii", type=float, nargs="+", default=Config.radii)
    args = ap.parse_args()
    main(Config(radii=tuple(args.radii)))
