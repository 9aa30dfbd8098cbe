"""Membership on the slice (a, lam, lam, lam^2) against two candidate
descriptions: |a|^2 + |lam|^2 < 1 and |a| < 1 - |lam|^2."""

import argparse
from dataclasses import dataclass

import numpy as np

from hexablock.core import default_rng, uniform_disc
from hexablock.hexa import hexa_member_arrays

BAND = 1e-8


@dataclass(frozen=True)
class Config:
    n: int = 10_000
    seed: int = 0


def main(cfg: Config) -> None:
    rng = default_rng(cfg.seed)
    a, lam = uniform_disc(rng, cfg.n), uniform_disc(rng, cfg.n)
    got = hexa_member_arrays(a, lam, lam, lam * lam)
    candidates = {
        "|a|^2+|lam|^2<1": 1 - np.abs(a) ** 2 - np.abs(lam) ** 2,
        "|a|<1-|lam|^2": 1 - np.abs(lam) ** 2 - np.abs(a),
    }
    print("relation,decisive,mismatches,members_claimed,members_actual")
    for name, margin in candidates.items():
        decisive = np.abs(margin) > BAND
        bad = int(np.sum((got != (margin > 0)) & decisive))
        print(f"{name},{int(decisive.sum())},{bad},{int(np.sum(margin > 0))},{int(got.sum())}")
    # a concrete witness: inside the unit ball, outside the domain
    print("witness (a, lam) = (0.8, 0.5):", bool(hexa_member_arrays(0.8, 0.5, 0.5, 0.25)))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    main(Config(args.n, args.seed))
