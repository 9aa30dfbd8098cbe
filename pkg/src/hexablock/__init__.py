"""Computational toolkit for the tetrablock and the hexablock."""

from .automorphism import (
    HexaAutomorphism,
    auto_apply,
    auto_compose,
    auto_inverse,
    fiber_multiplier,
    normalize_point,
)
from .core import (
    DiscAutomorphism,
    Matrix2,
    blaschke,
    mobius_apply,
    mobius_compose,
    mobius_invert,
    op_norm,
    spectral_radius,
)
from .hexa import (
    Disc2Family,
    HexaPoint,
    HexaStratum,
    dilate,
    disc2_eval,
    extremal_point,
    hessian_u_origin,
    hexa_member,
    hexa_stratify,
    psi_h,
    u_bruteforce,
    u_closed,
)
from .mu import MuResult, MuStructure, mu_all, mu_domain_crosscheck, mu_value, pi_map
from .tetra import (
    TetraClass,
    TetraMethod,
    TetraPoint,
    beta_coords,
    psi,
    tetra_classify,
    tetra_kernel_auto,
    tetra_member,
    tetra_orbit_radius,
)

__version__ = "0.1.0"
