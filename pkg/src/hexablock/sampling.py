"""Seeded random members, automorphisms and matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automorphism import HexaAutomorphism
from .core import Matrix2, uniform_disc, unit_circle
from .hexa import HexaPoint, hexa_member_arrays
from .tetra import TetraPoint, tetra_member_arrays

MIN_ACCEPTANCE = 1e-4


class SamplerGuardError(RuntimeError):
    """Rejection sampling accepted too few draws to be a sensible configuration."""


@dataclass(frozen=True)
class SamplerConfig:
    radius: float = 1.0
    batch: int = 4096
    min_draws: int = 100_000


def _reject(rng, n, n_coords, accept, config: SamplerConfig):
    kept, draws = [], 0
    while len(kept) < n:
        z = uniform_disc(rng, (config.batch, n_coords), config.radius)
        draws += config.batch
        ok = accept(*z.T)
        kept.extend(z[ok])
        if draws >= config.min_draws and len(kept) / draws < MIN_ACCEPTANCE:
            raise SamplerGuardError(
                f"acceptance rate {len(kept) / draws:.2e} after {draws} draws is below {MIN_ACCEPTANCE:g}"
            )
    return np.array(kept[:n])


def sample_tetra(rng, n: int, config: SamplerConfig = SamplerConfig()) -> list[TetraPoint]:
    """Uniform draws from the polydisc kept when interior to the tetrablock."""
    z = _reject(rng, n, 3, tetra_member_arrays, config)
    return [TetraPoint(*row) for row in z]


def sample_hexa(rng, n: int, config: SamplerConfig = SamplerConfig()) -> list[HexaPoint]:
    z = _reject(rng, n, 4, hexa_member_arrays, config)
    return [HexaPoint.of(*row) for row in z]


def random_automorphism(rng, max_radius: float = 0.8) -> HexaAutomorphism:
    xi1, xi2, omega = (complex(v) for v in unit_circle(rng, 3))
    z1, z2 = (complex(v) for v in uniform_disc(rng, 2, max_radius))
    return HexaAutomorphism(xi1, xi2, z1, z2, bool(rng.integers(2)), omega)


def random_matrix(rng, radius: float) -> Matrix2:
    return Matrix2(*uniform_disc(rng, 4, radius))
