"""Named verification suites.  Each draws seeded cases and counts passes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .automorphism import (
    HexaAutomorphism,
    auto_apply,
    auto_compose,
    auto_inverse,
    fiber_multiplier,
    tetra_part,
)
from .core import default_rng, op_norm, random_disc_automorphism, uniform_box, uniform_disc, unit_circle
from .hexa import (
    Disc2Family,
    HexaPoint,
    HexaStratum,
    disc2_eval,
    fiber_weight,
    hessian_u_origin,
    hexa_member,
    hexa_member_arrays,
    hexa_stratify,
)
from .mu import CrossCheck, mu_all, mu_domain_crosscheck
from .sampling import random_automorphism, random_matrix, sample_hexa, sample_tetra
from .tetra import (
    TetraClass,
    TetraMethod,
    TetraPoint,
    boundary_defect,
    ineq2_margin,
    tetra_classify,
    tetra_kernel_auto,
    tetra_member,
    tetra_member_arrays,
    tetra_orbit_radius,
)


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    cases_run: int
    cases_passed: int
    max_residual: float
    seed: int

    @property
    def ok(self) -> bool:
        return self.cases_passed == self.cases_run

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "max_residual": self.max_residual,
            "seed": self.seed,
        }


class UnknownSuiteError(KeyError):
    pass


class _Tally:
    def __init__(self):
        self.run = 0
        self.passed = 0
        self.residual = 0.0

    def add(self, ok: bool, res: float = 0.0):
        self.run += 1
        self.passed += bool(ok)
        if math.isfinite(res):
            self.residual = max(self.residual, float(res))
        else:
            self.residual = math.inf


def _dist(p: HexaPoint, q: HexaPoint) -> float:
    return max(abs(u - v) for u, v in zip(p.coords(), q.coords()))


# ---------------------------------------------------------------------------


def _lemma21(rng, n, t: _Tally):
    """Four membership characterizations agree away from the boundary."""
    batch = 10_000
    done = 0
    while done < n:
        m = min(batch, n - done)
        x = uniform_box(rng, (3, m), 1.2)
        margin = ineq2_margin(*x)
        votes = np.array([tetra_member_arrays(*x, method=k) for k in TetraMethod])
        agree = np.all(votes == votes[0], axis=0)
        outside = np.abs(margin) > 1e-8
        for ok, mg in zip(agree | ~outside, margin):
            t.add(ok, 0.0 if ok else abs(mg))
        done += m


def _radial_boundary(x: TetraPoint) -> TetraPoint:
    """The point where rho -> (rho x1, rho x2, rho^2 x3) leaves the tetrablock."""

    def scaled(rho):
        return TetraPoint(rho * x.x1, rho * x.x2, rho * rho * x.x3)

    lo, hi = 1.0, 2.0
    while tetra_member(scaled(hi)):
        lo, hi = hi, 2 * hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if tetra_member(scaled(mid)) else (lo, mid)
    return scaled(0.5 * (lo + hi))


def _lemma23(rng, n, t: _Tally):
    """Radial boundary points have vanishing defect and classify as boundary."""
    for x in sample_tetra(rng, n):
        b = _radial_boundary(x)
        d = abs(float(boundary_defect(b.x1, b.x2, b.x3)))
        cls = tetra_classify(b)
        bounded = max(abs(b.x1), abs(b.x2), abs(b.x3)) <= 1 + 1e-9
        ok = d <= 1e-8 and bounded and cls in (TetraClass.BOUNDARY_ORDINARY, TetraClass.BOUNDARY_DISTINGUISHED)
        t.add(ok, d)


def _lemma24(rng, n, t: _Tally):
    """x1 = conj(x2) x3 with |x3| = 1 and |x2| <= 1 is distinguished and on the boundary.

    Such points have membership margin exactly 0, so only |margin| is tested;
    its sign is rounding noise.
    """
    for _ in range(n):
        x2 = complex(uniform_disc(rng, ()))
        x3 = complex(unit_circle(rng, ()))
        x = TetraPoint(x2.conjugate() * x3, x2, x3)
        res = abs(float(ineq2_margin(x.x1, x.x2, x.x3)))
        ok = tetra_classify(x) is TetraClass.BOUNDARY_DISTINGUISHED and res <= 1e-12
        t.add(ok, res)


def _lemma25(rng, n, t: _Tally):
    """Members satisfy |a|^2 + |x1|^2 < 1 and |a|^2 + |x2|^2 <= 1."""
    for p in sample_hexa(rng, n):
        s1 = abs(p.a) ** 2 + abs(p.x.x1) ** 2
        s2 = abs(p.a) ** 2 + abs(p.x.x2) ** 2
        t.add(s1 < 1 and s2 <= 1 + 1e-12, max(0.0, s1 - 1, s2 - 1))


def _boundary_strata(rng, n, t: _Tally):
    """Points built on each stratum are classified onto it."""
    xs = sample_tetra(rng, n)
    for i, x in enumerate(xs):
        kind = i % 3
        theta = complex(unit_circle(rng, ()))
        if kind == 0:
            p = HexaPoint(theta * math.sqrt(fiber_weight(x)), x)
            want = HexaStratum.BOUNDARY1
        elif kind == 1:
            r = float(rng.uniform(0.05, 0.95))
            a = theta * math.sqrt(1 - r) * float(rng.uniform(0.0, 0.95))
            p = HexaPoint.of(a, 0, r, 1 - r)
            want = HexaStratum.BOUNDARY2
        else:
            x2 = complex(uniform_disc(rng, ()))
            x3 = complex(unit_circle(rng, ()))
            p = HexaPoint.of(0, x2.conjugate() * x3, x2, x3)
            want = HexaStratum.BOUNDARY3
        t.add(hexa_stratify(p) is want)


B2_RADII = (0.3, 0.6)
B2_GRID = 32


def b2_family(r: float) -> Disc2Family:
    """A non-constant disc: h(lam) = -(1 - r) + 0.05 lam, g(mu) = a0 + 0.02 mu."""
    a0 = 0.5 * math.sqrt(1 - r)
    return Disc2Family(r, a0, h=(-(1 - r), 0.05), g=(a0, 0.02))


def b2_stated_modulus(r: float, h: complex) -> float:
    return (1 - r) / (2 - r) ** 2 * abs(1 - h)


def disc_points(n: int, radius: float = 0.9) -> list[complex]:
    """n deterministic, evenly spread points of the disc (golden-angle spiral)."""
    golden = math.pi * (3 - math.sqrt(5))
    return [complex(radius * math.sqrt((j + 0.5) / n) * np.exp(1j * golden * j)) for j in range(n)]


def b2_grid(n: int = B2_GRID):
    """n x n pairs (mu, lam) over (0.9 D)^2."""
    pts = disc_points(n)
    return [(mu, lam) for mu in pts for lam in pts]


def lemma_b2_cases(r: float, n: int = B2_GRID):
    """Yield (point, h, classified B2, |x1 x2 - x3|, stated modulus)."""
    f = b2_family(r)
    for mu, lam in b2_grid(n):
        p = disc2_eval(f, mu, lam)
        h = complex(f.h_at(lam))
        tri = abs(p.x.x1 * p.x.x2 - p.x.x3)
        yield p, h, hexa_stratify(p) is HexaStratum.BOUNDARY2, tri, b2_stated_modulus(r, h)


def _lemma_b2(rng, n, t: _Tally):
    """The constructed discs lie in the second stratum and obey the stated identity."""
    side = max(1, int(math.isqrt(max(n // len(B2_RADII), 1))))
    for r in B2_RADII:
        for _, _, in_b2, tri, stated in lemma_b2_cases(r, side):
            res = abs(tri - stated)
            t.add(in_b2 and res <= 1e-12, res)


def _fiber_identity(rng, n, t: _Tally):
    for x in sample_tetra(rng, n):
        tr = random_automorphism(rng)
        m = fiber_multiplier(tr, x)
        res = abs(fiber_weight(tetra_part(tr, x)) - abs(m) ** 2 * fiber_weight(x))
        t.add(res <= 1e-6, res)


def _group_laws(rng, n, t: _Tally):
    ident = HexaAutomorphism.identity()
    for p in sample_hexa(rng, n):
        t1, t2, t3 = (random_automorphism(rng) for _ in range(3))
        c = auto_compose(t1, t2)
        r_comp = _dist(auto_apply(c, p), auto_apply(t1, auto_apply(t2, p)))
        r_inv = _dist(auto_apply(auto_inverse(t1), auto_apply(t1, p)), p)
        lhs = auto_compose(auto_compose(t1, t2), t3)
        rhs = auto_compose(t1, auto_compose(t2, t3))
        r_assoc = _dist(auto_apply(lhs, p), auto_apply(rhs, p))
        r_id = _dist(auto_apply(auto_compose(ident, t1), p), auto_apply(t1, p))
        member = hexa_member(auto_apply(t1, p))
        ok = member and r_comp <= 1e-10 and r_inv <= 1e-10 and r_assoc <= 1e-9 and r_id <= 1e-10
        t.add(ok, max(r_comp, r_inv, r_assoc, r_id))


def mu_sandwich_case(a) -> tuple[bool, float, CrossCheck]:
    """Ordering with 1e-3 slack, full search against op_norm, witness feasibility,
    and the diagonal/tetrablock duality on the same matrix."""
    vals = mu_all(a)
    chain = [vals[k] for k in ("scalar", "diagonal", "upper", "full_search")]
    ordered = all(u.value <= v.value + 1e-3 for u, v in zip(chain, chain[1:]))
    norm = op_norm(a)
    search = vals["full_search"].value
    rel = abs(search - norm) / norm if norm > 0 else abs(search)
    feas = max((r.certificate_residual for r in vals.values() if r.witness is not None), default=0.0)
    cross = mu_domain_crosscheck(a, diag=vals["diagonal"], upper=vals["upper"])
    ok = ordered and rel <= 1e-4 and feas <= 1e-8
    return ok, max(rel, feas), cross


def _mu_sandwich(rng, n, t: _Tally):
    for _ in range(n):
        ok, res, _ = mu_sandwich_case(random_matrix(rng, 1.5))
        t.add(ok, res)


def _mu_tetra_duality(rng, n, t: _Tally):
    for _ in range(n):
        c = mu_domain_crosscheck(random_matrix(rng, 1.2))
        t.add(c.ok, abs(c.mu_diagonal - 1) if c.diagonal_agrees is False else 0.0)


def ball_slice_stated(a: complex, lam: complex) -> bool:
    return abs(a) ** 2 + abs(lam) ** 2 < 1


def _ball_slice(rng, n, t: _Tally):
    """Compare slice membership against |a|^2 + |lam|^2 < 1."""
    a = uniform_disc(rng, n)
    lam = uniform_disc(rng, n)
    got = hexa_member_arrays(a, lam, lam, lam * lam)
    gap = np.abs(a) ** 2 + np.abs(lam) ** 2 - 1
    for g, d in zip(got, gap):
        ok = abs(d) <= 1e-8 or bool(g) == (d < 0)
        t.add(ok, 0.0 if ok else abs(d))


def _hessian(rng, n, t: _Tally):
    for i in range(n):
        res = abs(hessian_u_origin(1e-3, slot=1 + i % 2) - 1)
        t.add(res <= 1e-4, res)


PHASES = 8
RADII = (0.25, 0.5, 0.9, 1.0)


def _quasi_balanced(rng, n, t: _Tally):
    phases = np.exp(2j * np.pi * np.arange(PHASES) / PHASES)
    pts = np.array([p.coords() for p in sample_hexa(rng, n)]).T
    ok = np.ones(n, dtype=bool)
    for lam in (*RADII, *phases):
        ok &= hexa_member_arrays(lam * pts[0], lam * pts[1], lam * pts[2], lam * lam * pts[3])
    for v in ok:
        t.add(bool(v))


def _orbit_radius(rng, n, t: _Tally):
    for x in sample_tetra(rng, n):
        r = tetra_orbit_radius(x)
        worst = 0.0
        for _ in range(10):
            y = tetra_kernel_auto(
                random_disc_automorphism(rng, 0.8), random_disc_automorphism(rng, 0.8), bool(rng.integers(2)), x
            )
            worst = max(worst, abs(tetra_orbit_radius(y) - r))
        x1 = complex(uniform_disc(rng, ()))
        r0 = tetra_orbit_radius(TetraPoint(x1, 0, 0))
        t.add(worst <= 1e-6 and r0 <= 1e-10 and 0 <= r < 1, max(worst, r0))


SUITES: dict[str, tuple[Callable, int]] = {
    "lemma2.1": (_lemma21, 100_000),
    "lemma2.3": (_lemma23, 200),
    "lemma2.4": (_lemma24, 1000),
    "lemma2.5": (_lemma25, 10_000),
    "boundary-strata": (_boundary_strata, 300),
    "lemma-b2": (_lemma_b2, 2 * B2_GRID * B2_GRID),
    "fiber-identity": (_fiber_identity, 200),
    "group-laws": (_group_laws, 100),
    "mu-sandwich": (_mu_sandwich, 50),
    "mu-tetra-duality": (_mu_tetra_duality, 100),
    "ball-slice": (_ball_slice, 10_000),
    "hessian": (_hessian, 1),
    "quasi-balanced": (_quasi_balanced, 10_000),
    "orbit-radius": (_orbit_radius, 50),
}


def run_suite(name: str, n: int | None = None, seed: int = 0) -> VerifyReport:
    if name not in SUITES:
        raise UnknownSuiteError(name)
    fn, default_n = SUITES[name]
    n = default_n if n is None else n
    if n < 1:
        raise ValueError("n must be at least 1")
    tally = _Tally()
    fn(default_rng(seed), n, tally)
    return VerifyReport(name, tally.run, tally.passed, tally.residual, seed)
