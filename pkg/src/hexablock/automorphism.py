"""The automorphisms T_{nu,chi,omega} and T_{nu,chi,F,omega} of the hexablock.

A map is stored by its canonical parameters (xi1, xi2, z1, z2, flip, omega).
It acts as

    (a, x) -> (m(x) a, F^flip S(x)),

    m(x) = omega xi2 sqrt((1-|z1|^2)(1-|z2|^2))
           / (1 - x1 conj(z1) - x2 conj(z2) xi2 + x3 conj(z1) conj(z2) xi2),

where S substitutes the disc maps

    phi1(w) = (xi1 w + conj(z1)) / (1 + z1 xi1 w),
    phi2(w) = xi2 (w + conj(z2)) / (1 + z2 w)

into the tetrablock kernel and F swaps x1 and x2.  phi2 is chi from the
parametrization nu = -xi1 B_{z1}, chi = -xi2 B_{-conj(z2)}; phi1 is chosen
so that phi1(0) = conj(z1), which makes the constant term of the
substituted kernel coincide with the denominator of m(x).  With that
choice |m(x)|^2 exp(-u(x)) = exp(-u(T x)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import (
    POLE_TOL,
    ConvergenceError,
    DiscAutomorphism,
    PoleError,
    as_complex,
    mobius_compose,
    mobius_invert,
    unimodular,
)
from .hexa import HexaPoint
from .tetra import TetraPoint, normalize_tetra, swap_pair, tetra_kernel_auto

REFERENCE_POINT = HexaPoint.of(0.5, 0, 0, 0)
CHECK_POINTS = (
    HexaPoint.of(0.5, 0, 0, 0),
    HexaPoint.of(0.2 - 0.1j, 0.3, -0.2j, 0.1),
    HexaPoint.of(-0.1j, -0.25 + 0.1j, 0.2, -0.3j),
    HexaPoint.of(0.3, 0.1j, 0.35, 0.05 + 0.05j),
)
CANON_TOL = 1e-8


class CanonicalizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class HexaAutomorphism:
    xi1: complex = 1 + 0j
    xi2: complex = 1 + 0j
    z1: complex = 0j
    z2: complex = 0j
    flip: bool = False
    omega: complex = 1 + 0j

    def __post_init__(self):
        for name in ("xi1", "xi2", "omega"):
            object.__setattr__(self, name, unimodular(getattr(self, name), name))
        for name in ("z1", "z2"):
            z = as_complex(getattr(self, name), name)
            if abs(z) >= 1:
                raise ValueError(f"{name} must lie in the open unit disc")
            object.__setattr__(self, name, z)
        object.__setattr__(self, "flip", bool(self.flip))

    @classmethod
    def identity(cls) -> "HexaAutomorphism":
        return cls()

    def disc_maps(self) -> tuple[DiscAutomorphism, DiscAutomorphism]:
        phi1 = DiscAutomorphism(self.xi1, -(self.xi1 * self.z1).conjugate())
        phi2 = DiscAutomorphism(self.xi2, -self.z2.conjugate())
        return phi1, phi2

    @classmethod
    def from_disc_maps(cls, phi1: DiscAutomorphism, phi2: DiscAutomorphism, flip: bool, omega=1.0):
        xi1 = phi1.eta
        z1 = -(xi1.conjugate() * phi1.alpha.conjugate())
        return cls(xi1, phi2.eta, z1, -phi2.alpha.conjugate(), flip, omega)

    def __call__(self, p: HexaPoint) -> HexaPoint:
        return auto_apply(self, p)


def _multiplier_no_omega(t: HexaAutomorphism, x: TetraPoint) -> complex:
    c1, c2 = t.z1.conjugate(), t.z2.conjugate()
    den = 1 - x.x1 * c1 - x.x2 * c2 * t.xi2 + x.x3 * c1 * c2 * t.xi2
    if abs(den) <= POLE_TOL:
        raise PoleError("automorphism multiplier has a pole at this point")
    return t.xi2 * math.sqrt((1 - abs(t.z1) ** 2) * (1 - abs(t.z2) ** 2)) / den


def fiber_multiplier(t: HexaAutomorphism, x: TetraPoint) -> complex:
    return t.omega * _multiplier_no_omega(t, x)


def tetra_part(t: HexaAutomorphism, x: TetraPoint) -> TetraPoint:
    phi1, phi2 = t.disc_maps()
    return tetra_kernel_auto(phi1, phi2, t.flip, x)


def auto_apply(t: HexaAutomorphism, p: HexaPoint) -> HexaPoint:
    return HexaPoint(fiber_multiplier(t, p.x) * p.a, tetra_part(t, p.x))


def _distance(p: HexaPoint, q: HexaPoint) -> float:
    return max(abs(u - v) for u, v in zip(p.coords(), q.coords()))


def _with_omega(phi1, phi2, flip, target_multiplier: complex, at: TetraPoint) -> HexaAutomorphism:
    """Canonical map with the given disc maps whose multiplier at ``at`` is ``target_multiplier``."""
    base = HexaAutomorphism.from_disc_maps(phi1, phi2, flip)
    omega = target_multiplier / _multiplier_no_omega(base, at)
    if abs(abs(omega) - 1) > CANON_TOL:
        raise CanonicalizationError(f"recovered omega is not unimodular: |omega| = {abs(omega)!r}")
    return HexaAutomorphism.from_disc_maps(phi1, phi2, flip, omega / abs(omega))


def _check(result: HexaAutomorphism, expected) -> None:
    for p in CHECK_POINTS:
        got, want = auto_apply(result, p), expected(p)
        res = _distance(got, want) / (1 + max(abs(v) for v in want.coords()))
        if res > CANON_TOL:
            raise CanonicalizationError(f"canonical form misses the composite by {res:.3e}")


def auto_compose(t1: HexaAutomorphism, t2: HexaAutomorphism) -> HexaAutomorphism:
    """t1 after t2.

    x-parts: F^f1 S_A F^f2 S_B = F^(f1 xor f2) S_(B o swap^f2(A)).
    """
    a = swap_pair(t1.disc_maps(), t2.flip)
    b = t2.disc_maps()
    phi1, phi2 = mobius_compose(b[0], a[0]), mobius_compose(b[1], a[1])
    flip = t1.flip != t2.flip
    x0 = REFERENCE_POINT.x
    target = fiber_multiplier(t1, tetra_part(t2, x0)) * fiber_multiplier(t2, x0)
    result = _with_omega(phi1, phi2, flip, target, x0)
    _check(result, lambda p: auto_apply(t1, auto_apply(t2, p)))
    return result


def auto_inverse(t: HexaAutomorphism) -> HexaAutomorphism:
    """(F^f S_A)^-1 = S_(A^-1) F^f = F^f S_(swap^f(A^-1))."""
    phi1, phi2 = t.disc_maps()
    inv = swap_pair((mobius_invert(phi1), mobius_invert(phi2)), t.flip)
    x0 = REFERENCE_POINT.x
    y0 = tetra_part(t, x0)
    result = _with_omega(inv[0], inv[1], t.flip, 1 / fiber_multiplier(t, x0), y0)
    forward = {p: auto_apply(t, p) for p in CHECK_POINTS}
    for p, q in forward.items():
        back = auto_apply(result, q)
        if _distance(back, p) > CANON_TOL * (1 + max(abs(v) for v in q.coords())):
            raise CanonicalizationError("inverse does not undo the map")
    return result


def params_close(t1: HexaAutomorphism, t2: HexaAutomorphism, tol: float = 1e-10) -> bool:
    if t1.flip != t2.flip:
        return False
    pairs = zip((t1.xi1, t1.xi2, t1.z1, t1.z2, t1.omega), (t2.xi1, t2.xi2, t2.z1, t2.z2, t2.omega))
    return all(abs(u - v) <= tol for u, v in pairs)


def normalize_point(p: HexaPoint, tol: float = 1e-12, max_iter: int = 100_000):
    """Return (T, r, a_mod) with T(p) = (a_mod, 0, 0, r) up to rounding.

    The x-part is moved to (0, 0, r) by the tetrablock orbit iteration; omega
    is chosen to make the fiber coordinate real and nonnegative.
    """
    norm = normalize_tetra(p.x, tol, max_iter)
    base = HexaAutomorphism.from_disc_maps(norm.m1, norm.m2, norm.flip)
    image = fiber_multiplier(base, p.x) * p.a
    omega = cmath.exp(-1j * cmath.phase(image)) if image != 0 else 1.0
    t = HexaAutomorphism.from_disc_maps(norm.m1, norm.m2, norm.flip, omega)
    q = auto_apply(t, p)
    if max(abs(q.x.x1), abs(q.x.x2)) > max(1e-10, 100 * tol):
        raise ConvergenceError("normalized point is not on the x3 axis")
    return t, abs(q.x.x3), abs(q.a)
