"""JSON encoding.  Complex numbers are [re, im]; matrices are row-major."""

from __future__ import annotations

import math

from .automorphism import HexaAutomorphism
from .core import Matrix2
from .hexa import HexaPoint
from .mu import MuResult
from .tetra import TetraPoint


class DecodeError(ValueError):
    pass


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, bool):
        raise DecodeError(f"expected a number or [re, im], got {v!r}")
    if isinstance(v, (int, float)):
        z = complex(v)
    elif isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in v
    ):
        z = complex(v[0], v[1])
    else:
        raise DecodeError(f"expected [re, im], got {v!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DecodeError("non-finite complex value")
    return z


def _field(obj, key):
    if not isinstance(obj, dict):
        raise DecodeError(f"expected a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise DecodeError(f"missing field {key!r}")
    return obj[key]


def tetra_to_json(x: TetraPoint) -> dict:
    return {"x1": complex_to_json(x.x1), "x2": complex_to_json(x.x2), "x3": complex_to_json(x.x3)}


def tetra_from_json(obj) -> TetraPoint:
    return TetraPoint(*(complex_from_json(_field(obj, k)) for k in ("x1", "x2", "x3")))


def hexa_to_json(p: HexaPoint) -> dict:
    return {"a": complex_to_json(p.a), **tetra_to_json(p.x)}


def hexa_from_json(obj) -> HexaPoint:
    return HexaPoint(complex_from_json(_field(obj, "a")), tetra_from_json(obj))


def matrix_to_json(m: Matrix2 | None):
    return None if m is None else [complex_to_json(v) for v in m.entries()]


def matrix_from_json(v) -> Matrix2:
    if not isinstance(v, list) or len(v) != 4:
        raise DecodeError("a matrix is a row-major list of four [re, im] entries")
    return Matrix2(*(complex_from_json(e) for e in v))


def auto_to_json(t: HexaAutomorphism) -> dict:
    return {
        "xi1": complex_to_json(t.xi1),
        "xi2": complex_to_json(t.xi2),
        "z1": complex_to_json(t.z1),
        "z2": complex_to_json(t.z2),
        "flip": t.flip,
        "omega": complex_to_json(t.omega),
    }


def auto_from_json(obj) -> HexaAutomorphism:
    flip = obj.get("flip", False) if isinstance(obj, dict) else None
    if not isinstance(flip, bool):
        raise DecodeError("flip must be a boolean")
    vals = {k: complex_from_json(_field(obj, k)) for k in ("xi1", "xi2", "z1", "z2", "omega")}
    try:
        return HexaAutomorphism(flip=flip, **vals)
    except ValueError as exc:
        raise DecodeError(str(exc)) from exc


def mu_to_json(r: MuResult) -> dict:
    return {
        "value": r.value,
        "witness": matrix_to_json(r.witness),
        "residual": r.certificate_residual,
        "warning": r.warning,
    }
