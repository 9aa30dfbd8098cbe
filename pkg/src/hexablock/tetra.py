"""Tetrablock: membership oracles, boundary classes, beta coordinates and
the automorphisms obtained by Mobius substitution into the kernel

    K_x(z, w) = 1 - x1 z - x2 w + x3 z w.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    POLE_TOL,
    ConvergenceError,
    DegenerateError,
    DiscAutomorphism,
    PoleError,
    as_complex,
    mobius_compose,
    op_norm_arrays,
)

BETA_TOL = 1e-12
DEFAULT_EPS = 1e-9
# margins at or below this count as non-members, so exact boundary points
# do not flip to "member" on rounding noise
MEMBER_TOL = 1e-14
SUPPSI_GRID = 400
GOLDEN_STEPS = 60


@dataclass(frozen=True)
class TetraPoint:
    x1: complex
    x2: complex
    x3: complex

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            object.__setattr__(self, name, as_complex(getattr(self, name), name))

    def __iter__(self):
        return iter((self.x1, self.x2, self.x3))

    def flipped(self) -> "TetraPoint":
        return TetraPoint(self.x2, self.x1, self.x3)

    def kernel(self, z, w):
        return 1 - self.x1 * z - self.x2 * w + self.x3 * z * w


@dataclass(frozen=True)
class BetaPair:
    beta1: complex
    beta2: complex


class TetraClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY_ORDINARY = "boundary"
    BOUNDARY_DISTINGUISHED = "distinguished"
    EXTERIOR = "exterior"


class TetraMethod(enum.Enum):
    INEQ2 = "ineq2"
    SUPPSI3 = "suppsi3"
    MATRIX4 = "matrix4"
    BETA5 = "beta5"


def psi(z, x: TetraPoint) -> complex:
    """The fractional-linear symbol (x3 z - x1) / (x2 z - 1)."""
    z = complex(z)
    den = x.x2 * z - 1
    if abs(den) <= POLE_TOL:
        raise PoleError(f"psi has a pole at z = {z!r}")
    return (x.x3 * z - x.x1) / den


def beta_coords(x: TetraPoint) -> BetaPair:
    d = 1.0 - abs(x.x3) ** 2
    if abs(x.x3) >= 1.0 - BETA_TOL:
        raise DegenerateError(f"beta coordinates need |x3| < 1, got |x3| = {abs(x.x3)!r}")
    return BetaPair(
        (x.x1 - x.x2.conjugate() * x.x3) / d,
        (x.x2 - x.x1.conjugate() * x.x3) / d,
    )


# ---------------------------------------------------------------------------
# Vectorized membership oracles.  All take broadcastable complex arrays.


def ineq2_margin(x1, x2, x3):
    """1 - |x2|^2 - |x1 - conj(x2) x3| - |x1 x2 - x3|; positive exactly on the tetrablock."""
    return 1.0 - np.abs(x2) ** 2 - np.abs(x1 - np.conj(x2) * x3) - np.abs(x1 * x2 - x3)


def boundary_defect(x1, x2, x3):
    """1 - |x1|^2 - |x2|^2 + |x3|^2 - 2|x1 x2 - x3|, which vanishes on the topological boundary."""
    return 1.0 - np.abs(x1) ** 2 - np.abs(x2) ** 2 + np.abs(x3) ** 2 - 2.0 * np.abs(x1 * x2 - x3)


def _circle_modulus(x1, x2, x3, t):
    z = np.exp(1j * t)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.abs((x3 * z - x1) / (x2 * z - 1))


def psi_circle_max(x1, x2, x3, n_grid: int = SUPPSI_GRID, steps: int = GOLDEN_STEPS):
    """max over |z| = 1 of |psi(z, x)|.

    |psi| restricted to the circle has a single local maximum (the image of a
    circle under a Mobius map is a circle), so the maximum lies within one
    grid step of the best grid node; golden-section search finishes the job.
    """
    x1, x2, x3 = (np.atleast_1d(np.asarray(v, dtype=complex)) for v in np.broadcast_arrays(x1, x2, x3))
    h = 2 * np.pi / n_grid
    grid = np.arange(n_grid) * h
    vals = _circle_modulus(x1[:, None], x2[:, None], x3[:, None], grid[None, :])
    vals = np.where(np.isnan(vals), np.inf, vals)
    k = np.argmax(vals, axis=1)
    best = vals[np.arange(len(k)), k]
    lo = grid[k] - h
    hi = grid[k] + h
    g = (math.sqrt(5) - 1) / 2
    c = hi - g * (hi - lo)
    d = lo + g * (hi - lo)
    fc = _circle_modulus(x1, x2, x3, c)
    fd = _circle_modulus(x1, x2, x3, d)
    for _ in range(steps):
        left = fc > fd
        lo = np.where(left, lo, c)
        hi = np.where(left, d, hi)
        c_next = np.where(left, hi - g * (hi - lo), d)
        d_next = np.where(left, c, lo + g * (hi - lo))
        f_new = _circle_modulus(x1, x2, x3, np.where(left, c_next, d_next))
        fc, fd = np.where(left, f_new, fd), np.where(left, fc, f_new)
        c, d = c_next, d_next
    refined = np.maximum(np.maximum(fc, fd), best)
    return np.where(np.isnan(refined), np.inf, refined)


def suppsi_margin(x1, x2, x3, n_grid: int = SUPPSI_GRID):
    """1 - sup over the disc of |psi(., x)|; -inf when the pole sits in the closed disc.

    With |x2| < 1 psi is holomorphic on the closed disc and the supremum is
    the maximum over the circle.  |x2| >= 1 either puts the pole in the closed
    disc or (when x1 x2 = x3) violates the side condition |x2| < 1.
    """
    x1, x2, x3 = (np.atleast_1d(np.asarray(v, dtype=complex)) for v in np.broadcast_arrays(x1, x2, x3))
    out = np.full(x1.shape, -np.inf)
    ok = np.abs(x2) < 1.0
    if np.any(ok):
        out[ok] = 1.0 - psi_circle_max(x1[ok], x2[ok], x3[ok], n_grid)
    return out


def matrix_margin(x1, x2, x3):
    """1 - ||[[x1, s], [s, x2]]|| with s^2 = x1 x2 - x3."""
    s = np.sqrt(np.asarray(x1 * x2 - x3, dtype=complex))
    return 1.0 - op_norm_arrays(x1, s, s, x2)


def beta_margin(x1, x2, x3):
    """1 - |beta1| - |beta2| where |x3| < 1, -inf elsewhere."""
    x1, x2, x3 = (np.atleast_1d(np.asarray(v, dtype=complex)) for v in np.broadcast_arrays(x1, x2, x3))
    out = np.full(x1.shape, -np.inf)
    ok = np.abs(x3) < 1.0
    d = 1.0 - np.abs(x3[ok]) ** 2
    b1 = (x1[ok] - np.conj(x2[ok]) * x3[ok]) / d
    b2 = (x2[ok] - np.conj(x1[ok]) * x3[ok]) / d
    out[ok] = 1.0 - np.abs(b1) - np.abs(b2)
    return out


_MARGINS = {
    TetraMethod.INEQ2: ineq2_margin,
    TetraMethod.SUPPSI3: suppsi_margin,
    TetraMethod.MATRIX4: matrix_margin,
    TetraMethod.BETA5: beta_margin,
}


def tetra_margin_arrays(x1, x2, x3, method: TetraMethod = TetraMethod.INEQ2):
    return _MARGINS[TetraMethod(method)](x1, x2, x3)


def tetra_member_arrays(x1, x2, x3, method: TetraMethod = TetraMethod.INEQ2):
    return np.asarray(tetra_margin_arrays(x1, x2, x3, method)) > MEMBER_TOL


def tetra_margin(x: TetraPoint, method: TetraMethod = TetraMethod.INEQ2) -> float:
    return float(np.ravel(tetra_margin_arrays(x.x1, x.x2, x.x3, method))[0])


def tetra_member(x: TetraPoint, method: TetraMethod = TetraMethod.INEQ2) -> bool:
    return tetra_margin(x, method) > MEMBER_TOL


def tetra_classify(x: TetraPoint, eps: float = DEFAULT_EPS) -> TetraClass:
    """Interior / ordinary boundary / distinguished boundary / exterior.

    Points within ``eps`` of the boundary count as boundary points.  The
    ordinary-boundary test accepts either a small boundary defect or a small
    |ineq2 margin|; the two vanish together but at different rates.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    x1, x2, x3 = x
    margin = float(ineq2_margin(x1, x2, x3))
    if margin > eps:
        return TetraClass.INTERIOR
    if (
        abs(x1 - x2.conjugate() * x3) <= eps
        and abs(abs(x3) - 1.0) <= eps
        and abs(x2) <= 1.0 + eps
    ):
        return TetraClass.BOUNDARY_DISTINGUISHED
    bounded = max(abs(x1), abs(x2), abs(x3)) <= 1.0 + eps
    defect = abs(float(boundary_defect(x1, x2, x3)))
    if bounded and min(defect, abs(margin)) <= eps:
        return TetraClass.BOUNDARY_ORDINARY
    return TetraClass.EXTERIOR


# ---------------------------------------------------------------------------
# Automorphisms by kernel substitution.


def kernel_substitute_arrays(m1: DiscAutomorphism, m2: DiscAutomorphism, x1, x2, x3):
    """Coefficients (n00, n10, n01, n11) of

        (c1 z + d1)(c2 w + d2) K_x(m1(z), m2(w)) = n00 - n10 z - n01 w + n11 z w.
    """
    a1, b1, c1, d1 = m1.coefficients()
    a2, b2, c2, d2 = m2.coefficients()
    n00 = d1 * d2 - x1 * b1 * d2 - x2 * d1 * b2 + x3 * b1 * b2
    n10 = -(c1 * d2 - x1 * a1 * d2 - x2 * c1 * b2 + x3 * a1 * b2)
    n01 = -(d1 * c2 - x1 * b1 * c2 - x2 * d1 * a2 + x3 * b1 * a2)
    n11 = c1 * c2 - x1 * a1 * c2 - x2 * c1 * a2 + x3 * a1 * a2
    return n00, n10, n01, n11


def tetra_kernel_auto_arrays(m1, m2, flip, x1, x2, x3):
    n00, n10, n01, n11 = kernel_substitute_arrays(m1, m2, x1, x2, x3)
    y1, y2, y3 = n10 / n00, n01 / n00, n11 / n00
    if flip:
        y1, y2 = y2, y1
    return y1, y2, y3


def tetra_kernel_auto(m1: DiscAutomorphism, m2: DiscAutomorphism, flip: bool, x: TetraPoint) -> TetraPoint:
    """Image of x under z -> m1(z), w -> m2(w) in the kernel, then the optional coordinate swap."""
    n00, n10, n01, n11 = kernel_substitute_arrays(m1, m2, x.x1, x.x2, x.x3)
    if abs(n00) <= POLE_TOL:
        raise DegenerateError("kernel substitution has vanishing constant term")
    y = TetraPoint(n10 / n00, n01 / n00, n11 / n00)
    return y.flipped() if flip else y


def swap_pair(pair, flip: bool):
    return (pair[1], pair[0]) if flip else pair


@dataclass(frozen=True)
class OrbitNormalization:
    """x_normal = tetra_kernel_auto(m1, m2, flip, x) = (~0, ~0, r)."""

    m1: DiscAutomorphism
    m2: DiscAutomorphism
    flip: bool
    x_normal: TetraPoint
    iterations: int

    @property
    def radius(self) -> float:
        return abs(self.x_normal.x3)


def normalize_tetra(x: TetraPoint, tol: float = 1e-12, max_iter: int = 100_000) -> OrbitNormalization:
    """Move x to (0, 0, r), r >= 0, by repeating "kill x1, then swap".

    Tracks the accumulated map as F^flip S_(m1, m2), where S substitutes into
    the kernel.  S_A S_B = S_(B o A) and F S_(p, q) = S_(q, p) F.
    """
    if not tetra_member(x):
        raise ValueError(f"orbit normalization needs a tetrablock point, got {x}")
    ident = DiscAutomorphism.identity()
    pair = (ident, ident)
    flip = False
    x1, x2, x3 = x
    it = 0
    while max(abs(x1), abs(x2)) > tol:
        if it >= max_iter:
            raise ConvergenceError(f"orbit normalization did not converge in {max_iter} steps")
        kill = DiscAutomorphism(1.0, -x1.conjugate())
        d = 1.0 - abs(x1) ** 2
        x1, x2, x3 = (x2 - x1.conjugate() * x3) / d, 0j, (x3 - x1 * x2) / d
        a = swap_pair((kill, ident), flip)
        pair = (mobius_compose(pair[0], a[0]), mobius_compose(pair[1], a[1]))
        flip = not flip
        it += 1
    if abs(x3) > 0:
        rot = swap_pair((DiscAutomorphism.rotation(abs(x3) / x3), ident), flip)
        pair = (mobius_compose(pair[0], rot[0]), mobius_compose(pair[1], rot[1]))
    x_normal = tetra_kernel_auto(pair[0], pair[1], flip, x)
    return OrbitNormalization(pair[0], pair[1], flip, x_normal, it)


def tetra_orbit_radius(x: TetraPoint, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    return normalize_tetra(x, tol, max_iter).radius
