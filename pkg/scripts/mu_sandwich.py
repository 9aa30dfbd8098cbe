"""mu for the four structures on random 2x2 matrices: ordering, full-block
search against the operator norm, and the diagonal/tetrablock duality."""

import argparse
import csv
import sys
from dataclasses import dataclass

from hexablock.core import default_rng, op_norm
from hexablock.mu import mu_all, mu_domain_crosscheck
from hexablock.sampling import random_matrix


@dataclass(frozen=True)
class Config:
    n: int = 50
    radius: float = 1.5
    seed: int = 0


def main(cfg: Config) -> None:
    rng = default_rng(cfg.seed)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["scalar", "diagonal", "upper", "full", "full_search", "op_norm", "tetra_member", "agrees", "warning"])
    for _ in range(cfg.n):
        a = random_matrix(rng, cfg.radius)
        r = mu_all(a)
        cc = mu_domain_crosscheck(a, diag=r["diagonal"], upper=r["upper"])
        warn = any(v.warning for v in r.values())
        w.writerow(
            [f"{r[k].value:.10f}" for k in ("scalar", "diagonal", "upper", "full", "full_search")]
            + [f"{op_norm(a):.10f}", cc.tetra_point_member, cc.diagonal_agrees, warn]
        )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--radius", type=float, default=Config.radius)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    main(Config(args.n, args.radius, args.seed))
