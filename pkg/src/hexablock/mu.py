"""Structured singular value of 2x2 matrices.

    mu_E(A) = 1 / inf{ ||X|| : X in E, det(I - A X) = 0 },   0 if no such X.

For X = [[p, q], [t, s]],

    det(I - A X) = 1 - a11 p - a12 t - a21 q - a22 s + det(A) (p s - q t),

which is affine in each entry separately.  The searches below eliminate one
entry from the constraint exactly and minimize ||X|| over the rest, so
every witness is feasible by construction.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import Matrix2, eigenvalues, op_norm, op_norm_arrays, op_norm_entries
from .hexa import HexaPoint, dilate, hexa_member
from .tetra import TetraPoint, tetra_member

ELIM_TOL = 1e-8
GRID = 16
TOP = 8
SPREAD_TOL = 1e-4


class MuStructure(enum.Enum):
    SCALAR = "scalar"
    DIAGONAL = "diagonal"
    UPPER_TRIANGULAR = "upper"
    FULL = "full"


@dataclass(frozen=True)
class MuResult:
    value: float
    witness: Matrix2 | None = None
    certificate_residual: float | None = None
    warning: bool = False
    starts: int = field(default=0, repr=False)


def pi_map(a: Matrix2) -> HexaPoint:
    return HexaPoint.of(a.a21, a.a11, a.a22, a.det)


def residual(a: Matrix2, x: Matrix2) -> float:
    """|det(I - A X)|."""
    return abs(_det_i_minus(a, x))


def _det_i_minus(a: Matrix2, x: Matrix2) -> complex:
    ax = a @ x
    return (1 - ax.a11) * (1 - ax.a22) - ax.a12 * ax.a21


def _result(a: Matrix2, x: Matrix2, warning: bool = False, starts: int = 0) -> MuResult:
    return MuResult(1.0 / op_norm(x), x, abs(_det_i_minus(a, x)), warning, starts)


def _cgrid(n_complex: int, radius: float, per_axis: int) -> np.ndarray:
    """Product grid over n_complex complex variables, shape (N, n_complex)."""
    axis = np.linspace(-radius, radius, per_axis)
    re_im = np.array(list(itertools.product(axis, repeat=2 * n_complex)))
    return re_im[:, 0::2] + 1j * re_im[:, 1::2]


def _refine(objective, starts: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Nelder-Mead from each start (complex vectors) at coarse tolerance, then
    polish the winner at tight tolerance."""

    def real_obj(v):
        return objective(v[0::2] + 1j * v[1::2])

    def run(z0, xatol, fatol):
        v0 = np.empty(2 * len(z0))
        v0[0::2], v0[1::2] = z0.real, z0.imag
        simplex = np.vstack([v0, v0 + np.diag(0.1 * (1.0 + np.abs(v0)))])
        r = minimize(
            real_obj,
            v0,
            method="Nelder-Mead",
            options={
                "xatol": xatol,
                "fatol": fatol,
                "maxiter": 6000,
                "maxfev": 6000,
                "adaptive": True,
                "initial_simplex": simplex,
            },
        )
        return float(r.fun), r.x[0::2] + 1j * r.x[1::2]

    out = [run(np.asarray(z0, dtype=complex), 1e-7, 1e-9) for z0 in starts]
    out.sort(key=lambda t: t[0])
    for _ in range(2):
        again = run(out[0][1], 1e-12, 1e-14)
        if again[0] <= out[0][0]:
            out[0] = again
    out.sort(key=lambda t: t[0])
    return out


def _spread_warning(results) -> bool:
    """True unless a second start lands within SPREAD_TOL (relative) of the best."""
    finite = [v for v, _ in results if math.isfinite(v)]
    if len(finite) < 2:
        return True
    best = finite[0]
    return (finite[1] - best) > SPREAD_TOL * best


def _top_starts(values: np.ndarray, points: np.ndarray, k: int) -> np.ndarray:
    values = np.where(np.isfinite(values), values, np.inf)
    idx = np.argsort(values)[:k]
    return points[idx[np.isfinite(values[idx])]]


def _search_radius(a: Matrix2) -> float:
    return 2.0 / op_norm(a)


def _mu_scalar(a: Matrix2) -> MuResult:
    lam = max(eigenvalues(a), key=abs)
    if abs(lam) == 0:
        return MuResult(0.0)
    return _result(a, Matrix2.diag(1 / lam, 1 / lam))


def _mu_full_closed(a: Matrix2) -> MuResult:
    sigma = op_norm(a)
    if sigma == 0:
        return MuResult(0.0)
    u, _, vh = np.linalg.svd(a.to_array())
    x = np.outer(vh[0].conj(), u[:, 0].conj()) / sigma
    return _result(a, Matrix2.from_array(x))


def _mu_diagonal(a: Matrix2) -> MuResult:
    a11, a22, det = a.a11, a.a22, a.det
    if a11 == 0 and a22 == 0 and det == 0:
        return MuResult(0.0)
    radius = _search_radius(a)
    grid = _cgrid(1, radius, GRID)[:, 0]
    results = []

    # (free coefficient, fixed coefficient) orientations: s from p, then p from s
    for first, (c_free, c_other) in ((True, (a11, a22)), (False, (a22, a11))):
        if c_other == 0 and det == 0:
            continue

        def solve(z, c_free=c_free, c_other=c_other):
            return (1 - c_free * z) / (c_other - det * z)

        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.maximum(np.abs(grid), np.abs(solve(grid)))

        def objective(v, solve=solve):
            z = v[0]
            den = c_other - det * z  # noqa: B023
            if den == 0:
                return math.inf
            return max(abs(z), abs(solve(z)))

        starts = _top_starts(vals, grid[:, None], TOP)
        for val, z in _refine(objective, starts):
            z = complex(z[0])
            other = complex(solve(z))
            pair = (z, other) if first else (other, z)
            results.append((val, pair))
    results.sort(key=lambda t: t[0])
    p, s = results[0][1]
    return _result(a, Matrix2.diag(p, s), _spread_warning(results), len(results))


def _mu_upper(a: Matrix2, diag: MuResult | None = None) -> MuResult:
    diag = diag if diag is not None else _mu_diagonal(a)
    a11, a21, a22, det = a.a11, a.a21, a.a22, a.det
    if abs(a21) <= ELIM_TOL:
        # constraint does not involve q, and q != 0 only adds norm
        return diag
    radius = _search_radius(a)
    pts = _cgrid(2, radius, GRID)
    p, s = pts[:, 0], pts[:, 1]
    q = (1 - a11 * p - a22 * s + det * p * s) / a21
    vals = op_norm_arrays(p, q, 0.0, s)

    def objective(v):
        p, s = v
        q = (1 - a11 * p - a22 * s + det * p * s) / a21
        return op_norm_entries(p, q, 0j, s)

    starts = _top_starts(vals, pts, TOP)
    if diag.witness is not None:
        starts = np.vstack([starts, [[diag.witness.a11, diag.witness.a22]]])
    results = _refine(objective, starts)
    p, s = (complex(v) for v in results[0][1])
    q = (1 - a11 * p - a22 * s + det * p * s) / a21
    out = _result(a, Matrix2(p, q, 0, s), _spread_warning(results), len(results))
    if diag.witness is not None and diag.value > out.value:
        return diag
    return out


def _mu_full_search(a: Matrix2, per_axis: int = 6) -> MuResult:
    """Full-block mu by constrained search, independent of the singular value formula."""
    a11, a12, a21, a22, det = a.a11, a.a12, a.a21, a.a22, a.det
    if op_norm(a) == 0:
        return MuResult(0.0)
    # eliminate q (coefficient a21 + det t) or t (coefficient a12 + det q)
    by_q = abs(a21) >= abs(a12)

    def complete(p, s, w):
        num = 1 - a11 * p - a22 * s + det * p * s
        if by_q:
            t = w
            q = (num - a12 * t) / (a21 + det * t)
        else:
            q = w
            t = (num - a21 * q) / (a12 + det * q)
        return p, q, t, s

    pts = _cgrid(3, _search_radius(a), per_axis)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = op_norm_arrays(*complete(pts[:, 0], pts[:, 1], pts[:, 2]))

    def objective(v):
        p, q, t, s = complete(*v)
        if not (math.isfinite(abs(q)) and math.isfinite(abs(t))):
            return math.inf
        return op_norm_entries(p, q, t, s)

    results = _refine(objective, _top_starts(vals, pts, TOP))
    p, q, t, s = complete(*(complex(v) for v in results[0][1]))
    return _result(a, Matrix2(p, q, t, s), _spread_warning(results), len(results))


def mu_value(a: Matrix2, structure: MuStructure, method: str = "closed") -> MuResult:
    """mu for the four structures.  ``method="search"`` computes the full-block
    value by constrained search instead of the singular value formula."""
    structure = MuStructure(structure)
    if structure is MuStructure.SCALAR:
        return _mu_scalar(a)
    if structure is MuStructure.DIAGONAL:
        return _mu_diagonal(a)
    if structure is MuStructure.UPPER_TRIANGULAR:
        return _mu_upper(a)
    if method == "search":
        return _mu_full_search(a)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    return _mu_full_closed(a)


@dataclass(frozen=True)
class CrossCheck:
    mu_diagonal: float
    tetra_point_member: bool
    diagonal_agrees: bool | None  # None inside the 1e-3 band around mu = 1
    mu_upper: float
    dilated_pi_member: bool
    closure_ok: bool

    @property
    def ok(self) -> bool:
        return self.diagonal_agrees is not False and self.closure_ok


def mu_all(a: Matrix2) -> dict[str, MuResult]:
    """All four structures plus the searched full-block value, sharing the diagonal solve."""
    diag = _mu_diagonal(a)
    return {
        "scalar": _mu_scalar(a),
        "diagonal": diag,
        "upper": _mu_upper(a, diag),
        "full": _mu_full_closed(a),
        "full_search": _mu_full_search(a),
    }


def mu_domain_crosscheck(
    a: Matrix2,
    band: float = 1e-3,
    dilation: float = 1 - 1e-6,
    diag: MuResult | None = None,
    upper: MuResult | None = None,
) -> CrossCheck:
    diag = diag if diag is not None else _mu_diagonal(a)
    upper = upper if upper is not None else _mu_upper(a, diag)
    inside = tetra_member(TetraPoint(a.a11, a.a22, a.det))
    agrees = None if abs(diag.value - 1) <= band else ((diag.value < 1) == inside)
    dilated = hexa_member(dilate(pi_map(a), dilation))
    closure_ok = dilated or not upper.value < 1 - band
    return CrossCheck(diag.value, inside, agrees, upper.value, dilated, closure_ok)
