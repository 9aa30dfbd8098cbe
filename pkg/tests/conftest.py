import cmath
import math
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hexablock import HexaAutomorphism, HexaPoint, Matrix2, TetraPoint, op_norm
from hexablock.hexa import fiber_weight

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=600, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def log(number: int, title: str, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# strategies

unit_floats = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
angles = st.floats(0.0, 2 * math.pi, allow_nan=False, allow_infinity=False)


@st.composite
def disc_points(draw, radius=1.0):
    rho = draw(st.floats(0.0, 1.0, exclude_max=True))
    return radius * math.sqrt(rho) * cmath.exp(1j * draw(angles))


@st.composite
def complexes(draw, bound=2.0):
    return complex(draw(st.floats(-bound, bound)), draw(st.floats(-bound, bound)))


@st.composite
def unimodulars(draw):
    return cmath.exp(1j * draw(angles))


@st.composite
def matrices(draw, bound=1.5):
    return Matrix2(*(draw(complexes(bound)) for _ in range(4)))


@st.composite
def interior_tetra(draw, max_norm=0.97):
    """(x1, x2, x1 x2 - s^2) from a symmetric matrix [[x1, s], [s, x2]] of norm < 1."""
    x1, x2, s = (draw(complexes(1.0)) for _ in range(3))
    m = Matrix2(x1, s, s, x2)
    norm = op_norm(m)
    if norm == 0:
        return TetraPoint(0, 0, 0)
    scale = draw(st.floats(0.0, max_norm)) / norm
    x1, x2, s = scale * x1, scale * x2, scale * s
    return TetraPoint(x1, x2, x1 * x2 - s * s)


@st.composite
def hexa_members(draw, max_ratio=0.98):
    x = draw(interior_tetra())
    rho = draw(st.floats(0.0, max_ratio)) * math.sqrt(fiber_weight(x))
    return HexaPoint(rho * cmath.exp(1j * draw(angles)), x)


@st.composite
def automorphisms(draw, max_radius=0.8):
    return HexaAutomorphism(
        draw(unimodulars()),
        draw(unimodulars()),
        draw(disc_points(max_radius)),
        draw(disc_points(max_radius)),
        draw(st.booleans()),
        draw(unimodulars()),
    )


def coords_close(p, q, tol):
    return max(abs(u - v) for u, v in zip(p.coords(), q.coords())) <= tol


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20261015))
