"""Hexablock: the Hartogs domain {(a, x) : x in tetrablock, |a|^2 < exp(-u(x))}.

u(x) = 2 log sup |Psi_{z1,z2}(1, x)| over the bidisc, where

    Psi_{z1,z2}(a, x) = a sqrt((1-|z1|^2)(1-|z2|^2)) / (1 - x1 z1 - x2 z2 + x3 z1 z2).

The supremum is attained at an explicit point (extremal_point); the grid
search in ``psi_sup_bruteforce`` is an independent check on it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import POLE_TOL, DegenerateError, PoleError, as_complex
from .tetra import (
    DEFAULT_EPS,
    MEMBER_TOL,
    TetraClass,
    TetraPoint,
    beta_coords,
    ineq2_margin,
    tetra_classify,
)

DISC_CLAMP = 1e-12


@dataclass(frozen=True)
class HexaPoint:
    a: complex
    x: TetraPoint

    def __post_init__(self):
        object.__setattr__(self, "a", as_complex(self.a, "a"))

    @classmethod
    def of(cls, a, x1, x2, x3) -> "HexaPoint":
        return cls(a, TetraPoint(x1, x2, x3))

    def coords(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.x.x1, self.x.x2, self.x.x3)


@dataclass(frozen=True)
class ExtremalPair:
    z1s: complex
    z2s: complex


class HexaStratum(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY1 = "b1"
    BOUNDARY2 = "b2"
    BOUNDARY3 = "b3"
    EXTERIOR = "exterior"


def psi_h(z1, z2, p: HexaPoint) -> complex:
    z1, z2 = complex(z1), complex(z2)
    den = p.x.kernel(z1, z2)
    if abs(den) <= POLE_TOL:
        raise PoleError(f"Psi has a pole at ({z1!r}, {z2!r})")
    return p.a * math.sqrt((1 - abs(z1) ** 2) * (1 - abs(z2) ** 2)) / den


def _extremal_arrays(x1, x2, x3):
    d = 1.0 - np.abs(x3) ** 2
    b1 = (x1 - np.conj(x2) * x3) / d
    b2 = (x2 - np.conj(x1) * x3) / d
    s1 = 1.0 + np.abs(b1) ** 2 - np.abs(b2) ** 2
    s2 = 1.0 + np.abs(b2) ** 2 - np.abs(b1) ** 2
    disc1 = s1 * s1 - 4.0 * np.abs(b1) ** 2
    disc2 = s2 * s2 - 4.0 * np.abs(b2) ** 2
    z1 = 2.0 * np.conj(b1) / (s1 + np.sqrt(np.maximum(disc1, 0.0)))
    z2 = 2.0 * np.conj(b2) / (s2 + np.sqrt(np.maximum(disc2, 0.0)))
    return z1, z2, np.minimum(disc1, disc2)


def extremal_point(x: TetraPoint) -> ExtremalPair:
    """The unique maximizer of |Psi_{z1,z2}(1, x)| over the bidisc."""
    beta_coords(x)  # raises on |x3| >= 1
    z1, z2, disc = _extremal_arrays(x.x1, x.x2, x.x3)
    if disc < -DISC_CLAMP:
        raise DegenerateError(f"negative discriminant {disc!r}: {x} is not in the tetrablock")
    return ExtremalPair(complex(z1), complex(z2))


def fiber_weight_arrays(x1, x2, x3):
    """exp(-u(x)) elementwise, i.e. the squared radius of the fiber over x.

    No membership check; callers mask out non-members.
    """
    z1, z2, _ = _extremal_arrays(x1, x2, x3)
    k = 1.0 - x1 * z1 - x2 * z2 + x3 * z1 * z2
    return np.abs(k) ** 2 / ((1.0 - np.abs(z1) ** 2) * (1.0 - np.abs(z2) ** 2))


def u_closed(x: TetraPoint) -> float:
    e = extremal_point(x)
    k = x.kernel(e.z1s, e.z2s)
    ratio = (1.0 - abs(e.z1s) ** 2) * (1.0 - abs(e.z2s) ** 2) / abs(k) ** 2
    return math.log(ratio)


def fiber_weight(x: TetraPoint) -> float:
    """exp(-u(x))."""
    return math.exp(-u_closed(x))


# ---------------------------------------------------------------------------
# Brute-force supremum.


def _ratio(x1, x2, x3, z1, z2, one_minus1, one_minus2):
    k = 1.0 - x1 * z1 - x2 * z2 + x3 * z1 * z2
    return one_minus1 * one_minus2 / (k.real * k.real + k.imag * k.imag)


def psi_sup_bruteforce(
    x: TetraPoint,
    n_grid: int = 32,
    n_refine: int = 4,
    n_radial: int = 12,
    refine_depth: int | None = None,
) -> float:
    """Lower bound on sup |Psi_{z1,z2}(1, x)|^2 over the open bidisc.

    A polar product grid with radii 0 and 1 - 2^-k (k = 1..n_radial) and
    ``n_grid`` angles per factor, followed by Nelder-Mead from the best
    ``n_refine`` grid cells.  The refinement works in coordinates
    z = R w / sqrt(1 + |w|^2), R = 1 - 2^-refine_depth, so every iterate
    stays inside the disc of radius R and 1 - |z|^2 is computed without
    cancellation.  Valid for x in the closure of the tetrablock as long as
    the kernel has no zero in the open bidisc.
    """
    if n_grid < 4:
        raise ValueError("n_grid must be at least 4")
    if refine_depth is None:
        refine_depth = n_radial + 8
    x1, x2, x3 = x
    gaps = np.array([1.0] + [2.0 ** -k for k in range(1, n_radial + 1)])
    radii = 1.0 - gaps
    one_minus = gaps * (1.0 + radii)
    theta = 2 * np.pi * np.arange(n_grid) / n_grid
    z = np.concatenate([[0j], (radii[1:, None] * np.exp(1j * theta)[None, :]).ravel()])
    om = np.concatenate([[1.0], np.repeat(one_minus[1:], n_grid)])
    vals = _ratio(x1, x2, x3, z[:, None], z[None, :], om[:, None], om[None, :])
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    flat = np.argsort(vals, axis=None)[::-1]
    best = float(vals.flat[flat[0]])

    big_r = 1.0 - 2.0 ** -refine_depth
    one_minus_r2 = 2.0 ** -refine_depth * (1.0 + big_r)

    def to_w(zv):
        zv = zv / big_r
        return zv / math.sqrt(max(1.0 - abs(zv) ** 2, 1e-300))

    def objective(v):
        w1 = complex(v[0], v[1])
        w2 = complex(v[2], v[3])
        n1 = 1.0 + abs(w1) ** 2
        n2 = 1.0 + abs(w2) ** 2
        z1 = big_r * w1 / math.sqrt(n1)
        z2 = big_r * w2 / math.sqrt(n2)
        om1 = (1.0 + one_minus_r2 * abs(w1) ** 2) / n1
        om2 = (1.0 + one_minus_r2 * abs(w2) ** 2) / n2
        k = 1.0 - x1 * z1 - x2 * z2 + x3 * z1 * z2
        kk = k.real * k.real + k.imag * k.imag
        if kk == 0.0:
            return 0.0
        return -om1 * om2 / kk

    n = len(z)
    seen = 0
    for idx in flat[: max(n_refine, 0) * 4]:
        if seen >= n_refine:
            break
        i, j = divmod(int(idx), n)
        if not np.isfinite(vals[i, j]):
            continue
        seen += 1
        w1, w2 = to_w(z[i]), to_w(z[j])
        v0 = np.array([w1.real, w1.imag, w2.real, w2.imag])
        simplex = np.vstack([v0, v0 + np.diag(0.1 * (1.0 + np.abs(v0)))])
        res = minimize(
            objective,
            v0,
            method="Nelder-Mead",
            options={
                "xatol": 1e-10,
                "fatol": 1e-14,
                "maxiter": 4000,
                "maxfev": 8000,
                "adaptive": True,
                "initial_simplex": simplex,
            },
        )
        best = max(best, -float(res.fun))
    return best


def u_bruteforce(x: TetraPoint, n_grid: int = 32, n_refine: int = 4, n_radial: int = 12) -> float:
    """2 log of the brute-force supremum; converges to u(x) from below."""
    return math.log(psi_sup_bruteforce(x, n_grid, n_refine, n_radial))


# ---------------------------------------------------------------------------
# Membership and strata.


def hexa_margin_arrays(a, x1, x2, x3):
    """(tetrablock margin, exp(-u) - |a|^2); the second is nan off the tetrablock."""
    a, x1, x2, x3 = (np.asarray(v, dtype=complex) for v in np.broadcast_arrays(a, x1, x2, x3))
    tm = ineq2_margin(x1, x2, x3)
    inside = tm > 0
    fm = np.full(np.shape(tm), np.nan)
    if np.any(inside):
        fm[inside] = fiber_weight_arrays(x1[inside], x2[inside], x3[inside]) - np.abs(a[inside]) ** 2
    return tm, fm


def hexa_member_arrays(a, x1, x2, x3):
    tm, fm = hexa_margin_arrays(a, x1, x2, x3)
    return (tm > MEMBER_TOL) & (np.nan_to_num(fm, nan=-1.0) > MEMBER_TOL)


def hexa_member(p: HexaPoint) -> bool:
    return bool(hexa_member_arrays(*p.coords()))


def hexa_margins(p: HexaPoint) -> tuple[float, float]:
    tm, fm = hexa_margin_arrays(*p.coords())
    return float(tm), float(fm)


def dilate(p: HexaPoint, r) -> HexaPoint:
    """(r a, r x1, r x2, r^2 x3).  Complex r with |r| <= 1 is allowed, which
    covers both the radial dilation and the quasi-circular rotation."""
    r = complex(r)
    if abs(r) > 1.0 + 1e-12:
        raise ValueError(f"dilation factor must satisfy |r| <= 1, got {r!r}")
    a, x1, x2, x3 = p.coords()
    return HexaPoint.of(r * a, r * x1, r * x2, r * r * x3)


def hexa_stratify(p: HexaPoint, eps: float = DEFAULT_EPS) -> HexaStratum:
    if eps <= 0:
        raise ValueError("eps must be positive")
    a, x1, x2, x3 = p.coords()
    tclass = tetra_classify(p.x, eps)
    if tclass is TetraClass.INTERIOR:
        gap = fiber_weight(p.x) - abs(a) ** 2
        if gap > eps:
            return HexaStratum.INTERIOR
        if abs(gap) <= eps:
            return HexaStratum.BOUNDARY1
    if tclass is TetraClass.BOUNDARY_ORDINARY:
        tri = abs(x1 * x2 - x3)
        if tri > eps and abs(abs(x3) - 1.0) > eps and abs(a) ** 2 < tri - eps:
            return HexaStratum.BOUNDARY2
    if tclass is not TetraClass.EXTERIOR and hexa_member(dilate(p, 1.0 - eps)):
        return HexaStratum.BOUNDARY3
    return HexaStratum.EXTERIOR


# ---------------------------------------------------------------------------
# Analytic discs in the second boundary stratum.


class InvalidFamilyError(ValueError):
    pass


def _poly(coeffs, z):
    out = np.zeros(np.shape(z), dtype=complex)
    for c in reversed(coeffs):
        out = out * z + c
    return out


def disc2_x(r: float, h):
    """x(lam) for h = h(lam): a point of the tetrablock boundary for any |h| < 1."""
    s = 1.0 - r
    return -(s + h) / (2.0 - r), (1.0 + s * h) / (2.0 - r), -h


@dataclass(frozen=True)
class Disc2Family:
    """(mu, lam) -> (g(mu), x1(lam), x2(lam), x3(lam)).

    ``h`` and ``g`` are polynomial coefficients (constant term first) with
    h(0) = -(1 - r) and g(0) = a0.  Polynomials attain their extreme moduli on
    the circle, so the band conditions are checked on 64 boundary points.
    """

    r: float
    a0: float
    h: tuple = ()
    g: tuple = ()
    n_check: int = field(default=64, repr=False)

    def __post_init__(self):
        h = tuple(complex(c) for c in self.h) or (complex(-(1.0 - self.r)),)
        g = tuple(complex(c) for c in self.g) or (complex(self.a0),)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        self.validate()

    @property
    def eps(self) -> float:
        return (1.0 - self.r - self.a0 ** 2) / 2.0

    def validate(self):
        r, a0 = self.r, self.a0
        if not 0.0 < r < 1.0:
            raise InvalidFamilyError(f"r must lie in (0, 1), got {r!r}")
        if not a0 ** 2 < 1.0 - r:
            raise InvalidFamilyError("need a0^2 < 1 - r")
        if abs(self.h[0] + (1.0 - r)) > 1e-12 or abs(self.g[0] - a0) > 1e-12:
            raise InvalidFamilyError("need h(0) = -(1 - r) and g(0) = a0")
        circle = np.exp(2j * np.pi * np.arange(self.n_check) / self.n_check)
        hv = _poly(self.h, circle)
        if np.max(np.abs(hv)) >= 1.0:
            raise InvalidFamilyError("h must map the disc into the disc")
        x1, x2, x3 = disc2_x(r, hv)
        tri = np.abs(x1 * x2 - x3)
        eps = self.eps
        if np.any(tri <= 1.0 - r - eps) or np.any(tri >= 1.0 - r + eps):
            raise InvalidFamilyError("|x1 x2 - x3| leaves the band (1 - r - eps, 1 - r + eps)")
        gv = np.abs(_poly(self.g, circle)) ** 2
        if np.any(gv <= a0 ** 2 - eps) or np.any(gv >= a0 ** 2 + eps):
            raise InvalidFamilyError("|g|^2 leaves the band (a0^2 - eps, a0^2 + eps)")

    def h_at(self, lam):
        return _poly(self.h, lam)

    def g_at(self, mu):
        return _poly(self.g, mu)


def disc2_eval(f: Disc2Family, mu, lam) -> HexaPoint:
    mu, lam = complex(mu), complex(lam)
    if abs(mu) >= 1 or abs(lam) >= 1:
        raise ValueError("mu and lambda must lie in the open disc")
    x1, x2, x3 = disc2_x(f.r, complex(f.h_at(lam)))
    return HexaPoint.of(complex(f.g_at(mu)), x1, x2, x3)


# ---------------------------------------------------------------------------


def hessian_u_origin(h: float = 1e-3, slot: int = 1) -> float:
    """Central-difference d^2 u / dx dxbar at the origin along coordinate x1 (slot=1) or x2."""
    if not 1e-5 <= h <= 1e-2:
        raise ValueError("step must lie in [1e-5, 1e-2]")
    if slot not in (1, 2):
        raise ValueError("slot must be 1 or 2")

    def u_at(v):
        x = TetraPoint(v, 0, 0) if slot == 1 else TetraPoint(0, v, 0)
        return u_closed(x)

    u0 = u_at(0j)
    d_re = (u_at(h) - 2 * u0 + u_at(-h)) / h ** 2
    d_im = (u_at(1j * h) - 2 * u0 + u_at(-1j * h)) / h ** 2
    return 0.25 * (d_re + d_im)
