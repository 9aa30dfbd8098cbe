"""Scalar and 2x2 primitives shared by the rest of the package.

Complex scalars are plain Python ``complex``. Functions whose name ends in
``_arrays`` accept numpy arrays (or scalars) and broadcast.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

UNIMODULAR_TOL = 1e-12
POLE_TOL = 1e-14


class PoleError(ZeroDivisionError):
    """A fractional-linear expression was evaluated at (or next to) its pole."""


class DegenerateError(ValueError):
    """Input lies where a closed form is undefined."""


class ConvergenceError(RuntimeError):
    pass


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def as_complex(z, name: str = "value") -> complex:
    z = complex(z)
    if not _finite(z):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def unimodular(z, name: str = "value") -> complex:
    """Return ``z / |z|`` after checking ``|z|`` is within tolerance of 1."""
    z = as_complex(z, name)
    if abs(abs(z) - 1.0) > UNIMODULAR_TOL:
        raise ValueError(f"{name} must be unimodular, |{name}| = {abs(z)!r}")
    return z / abs(z)


@dataclass(frozen=True)
class Matrix2:
    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, as_complex(getattr(self, name), name))

    @classmethod
    def from_array(cls, m) -> "Matrix2":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, p, s) -> "Matrix2":
        return cls(p, 0, 0, s)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a11, self.a12, self.a21, self.a22)

    @property
    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def trace(self) -> complex:
        return self.a11 + self.a22

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return Matrix2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def scale(self, t) -> "Matrix2":
        return Matrix2(*(t * v for v in self.entries()))

    def adjoint(self) -> "Matrix2":
        return Matrix2(
            self.a11.conjugate(), self.a21.conjugate(), self.a12.conjugate(), self.a22.conjugate()
        )


def op_norm_arrays(a11, a12, a21, a22):
    """Largest singular value of [[a11, a12], [a21, a22]], elementwise.

    sigma_max^2 is the top eigenvalue of M* M = [[al, be], [conj(be), ga]],
    taken as the mean plus the half-gap so equal singular values lose no digits.
    """
    al = np.abs(a11) ** 2 + np.abs(a21) ** 2
    ga = np.abs(a12) ** 2 + np.abs(a22) ** 2
    be = np.abs(np.conj(a11) * a12 + np.conj(a21) * a22)
    return np.sqrt(0.5 * (al + ga) + np.hypot(0.5 * (al - ga), be))


def op_norm_entries(a11, a12, a21, a22) -> float:
    """Scalar twin of op_norm_arrays, for use inside optimizer objectives."""
    al = abs(a11) ** 2 + abs(a21) ** 2
    ga = abs(a12) ** 2 + abs(a22) ** 2
    be = abs(a11.conjugate() * a12 + a21.conjugate() * a22)
    return math.sqrt(0.5 * (al + ga) + math.hypot(0.5 * (al - ga), be))


def op_norm(m: Matrix2) -> float:
    return op_norm_entries(*m.entries())


def eigenvalues(m: Matrix2) -> tuple[complex, complex]:
    half_tr = 0.5 * m.trace
    root = cmath.sqrt(half_tr * half_tr - m.det)
    return half_tr + root, half_tr - root


def spectral_radius(m: Matrix2) -> float:
    return max(abs(v) for v in eigenvalues(m))


def blaschke(alpha, lam) -> complex:
    """The Blaschke factor (lam - alpha) / (conj(alpha) lam - 1)."""
    alpha, lam = complex(alpha), complex(lam)
    if abs(alpha) >= 1:
        raise ValueError(f"Blaschke centre must lie in the open disc, got {alpha!r}")
    den = alpha.conjugate() * lam - 1
    if abs(den) <= POLE_TOL:
        raise PoleError(f"Blaschke factor B_{alpha} has a pole at {lam!r}")
    return (lam - alpha) / den


@dataclass(frozen=True)
class DiscAutomorphism:
    """lam -> eta (lam - alpha) / (1 - conj(alpha) lam)."""

    eta: complex = 1 + 0j
    alpha: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "eta", unimodular(self.eta, "eta"))
        alpha = as_complex(self.alpha, "alpha")
        if abs(alpha) >= 1:
            raise ValueError(f"alpha must lie in the open unit disc, |alpha| = {abs(alpha)!r}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def identity(cls) -> "DiscAutomorphism":
        return cls()

    @classmethod
    def rotation(cls, eta) -> "DiscAutomorphism":
        return cls(eta, 0j)

    @classmethod
    def from_coefficients(cls, a, b, c, d) -> "DiscAutomorphism":
        """Canonical parameters of lam -> (a lam + b) / (c lam + d)."""
        alpha = -b / a
        eta = a / d
        return cls(eta / abs(eta), alpha)

    def coefficients(self) -> tuple[complex, complex, complex, complex]:
        """(a, b, c, d) with the map equal to (a lam + b)/(c lam + d) and d = 1."""
        return (self.eta, -self.eta * self.alpha, -self.alpha.conjugate(), 1 + 0j)

    def __call__(self, lam):
        return self.eta * (lam - self.alpha) / (1 - np.conj(self.alpha) * lam)

    def derivative_modulus_at_zero(self) -> float:
        return 1.0 - abs(self.alpha) ** 2


def mobius_apply(m: DiscAutomorphism, lam) -> complex:
    return complex(m(complex(lam)))


def mobius_compose(m1: DiscAutomorphism, m2: DiscAutomorphism) -> DiscAutomorphism:
    """m1 after m2."""
    a, b, c, d = m1.coefficients()
    e, f, g, h = m2.coefficients()
    return DiscAutomorphism.from_coefficients(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mobius_invert(m: DiscAutomorphism) -> DiscAutomorphism:
    a, b, c, d = m.coefficients()
    return DiscAutomorphism.from_coefficients(d, -b, -c, a)


def default_rng(seed: int | None) -> np.random.Generator:
    """PCG64 generator; every seeded routine in the package goes through this."""
    return np.random.Generator(np.random.PCG64(seed))


def uniform_box(rng: np.random.Generator, shape, radius: float) -> np.ndarray:
    """Complex samples with real and imaginary parts uniform on [-radius, radius]."""
    return rng.uniform(-radius, radius, shape) + 1j * rng.uniform(-radius, radius, shape)


def uniform_disc(rng: np.random.Generator, shape, radius: float = 1.0) -> np.ndarray:
    rho = radius * np.sqrt(rng.uniform(0.0, 1.0, shape))
    theta = rng.uniform(0.0, 2 * np.pi, shape)
    return rho * np.exp(1j * theta)


def unit_circle(rng: np.random.Generator, shape) -> np.ndarray:
    return np.exp(1j * rng.uniform(0.0, 2 * np.pi, shape))


def random_unitary(rng: np.random.Generator) -> Matrix2:
    """Haar-distributed 2x2 unitary."""
    z = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return Matrix2.from_array(q)


def random_disc_automorphism(rng: np.random.Generator, max_radius: float = 0.9) -> DiscAutomorphism:
    eta = complex(unit_circle(rng, ()))
    alpha = complex(uniform_disc(rng, (), max_radius))
    return DiscAutomorphism(eta, alpha)
