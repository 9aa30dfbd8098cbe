"""The second-stratum disc family: stratum membership and |x1 x2 - x3|
against (1-r)/(2-r)^2 |1-h| and (1-r)/(2-r)^2 |1-h|^2."""

import argparse
from dataclasses import dataclass

from hexablock.verify import B2_RADII, lemma_b2_cases


@dataclass(frozen=True)
class Config:
    radii: tuple[float, ...] = B2_RADII
    grid: int = 32


def main(cfg: Config) -> None:
    print("r,points,in_b2,max_err_linear,max_err_squared")
    for r in cfg.radii:
        n = in_b2 = 0
        lin = sq = 0.0
        for _, h, ok, tri, stated in lemma_b2_cases(r, cfg.grid):
            n += 1
            in_b2 += ok
            lin = max(lin, abs(tri - stated))
            sq = max(sq, abs(tri - (1 - r) * abs(1 - h) ** 2 / (2 - r) ** 2))
        print(f"{r},{n},{in_b2},{lin:.3e},{sq:.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radii", type=float, nargs="+", default=Config.radii)
    ap.add_argument("--grid", type=int, default=Config.grid)
    args = ap.parse_args()
    main(Config(tuple(args.radii), args.grid))
