import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import automorphisms, coords_close, hexa_members, interior_tetra, unimodulars
from hexablock import (
    HexaAutomorphism,
    HexaPoint,
    HexaStratum,
    auto_compose,
    auto_inverse,
    fiber_multiplier,
    hexa_member,
    hexa_stratify,
    normalize_point,
)
from hexablock.automorphism import params_close, tetra_part
from hexablock.core import PoleError
from hexablock.hexa import fiber_weight
from hexablock.sampling import random_automorphism


def test_trivial_map_rotates_fiber():
    omega = cmath.exp(0.4j)
    t = HexaAutomorphism(omega=omega)
    p = HexaPoint.of(0.3, 0.2j, -0.1, 0.05)
    assert coords_close(t(p), HexaPoint(omega * p.a, p.x), 1e-15)
    assert fiber_multiplier(t, p.x) == pytest.approx(omega)


@given(hexa_members(), unimodulars(), unimodulars(), unimodulars())
def test_displayed_instance(p, xi1, xi2, omega):
    """T with z1 = x1, z2 = 0 moves x1 to 0 and rescales a by 1/sqrt(1 - |x1|^2)."""
    a, x1, x2, x3 = p.coords()
    t = HexaAutomorphism(xi1, xi2, x1, 0, False, omega)
    d = 1 - abs(x1) ** 2
    want = HexaPoint.of(
        omega * xi2 * a / math.sqrt(d),
        0,
        xi2 * (x2 - x1.conjugate() * x3) / d,
        -xi1 * xi2 * (x1 * x2 - x3) / d,
    )
    assert coords_close(t(p), want, 1e-12)
    assert fiber_multiplier(t, p.x) == pytest.approx(omega * xi2 / math.sqrt(d), abs=1e-12)


@given(hexa_members())
def test_pure_flip(p):
    t = HexaAutomorphism(flip=True)
    q = t(p)
    assert coords_close(q, HexaPoint(p.a, p.x.flipped()), 1e-15)
    assert hexa_member(q)


@given(automorphisms(), hexa_members())
def test_images_are_members(t, p):
    assert hexa_member(t(p))


@given(automorphisms(), interior_tetra())
def test_fiber_identity(t, x):
    m = fiber_multiplier(t, x)
    assert abs(fiber_weight(tetra_part(t, x)) - abs(m) ** 2 * fiber_weight(x)) <= 1e-6


@given(automorphisms(), interior_tetra(), st.floats(0, 2 * math.pi))
def test_first_stratum_preserved(t, x, theta):
    p = HexaPoint(cmath.exp(1j * theta) * math.sqrt(fiber_weight(x)), x)
    assert hexa_stratify(p) is HexaStratum.BOUNDARY1
    q = t(p)
    assert abs(abs(q.a) ** 2 - fiber_weight(q.x)) <= 1e-6


@given(automorphisms(), hexa_members())
def test_linear_in_fiber(t, p):
    zero = t(HexaPoint(0, p.x))
    assert zero.a == 0
    assert t(p).a - zero.a == fiber_multiplier(t, p.x) * p.a


@given(automorphisms(), automorphisms(), hexa_members())
def test_compose(t1, t2, p):
    c = auto_compose(t1, t2)
    assert coords_close(c(p), t1(t2(p)), 1e-10)


@given(automorphisms(), hexa_members())
def test_inverse(t, p):
    inv = auto_inverse(t)
    assert coords_close(inv(t(p)), p, 1e-10)
    assert coords_close(t(inv(p)), p, 1e-10)


@given(automorphisms(), automorphisms(), automorphisms(), hexa_members())
def test_associative(t1, t2, t3, p):
    lhs = auto_compose(auto_compose(t1, t2), t3)
    rhs = auto_compose(t1, auto_compose(t2, t3))
    assert coords_close(lhs(p), rhs(p), 1e-9)


@given(automorphisms())
def test_identity_laws(t):
    ident = HexaAutomorphism.identity()
    assert params_close(auto_compose(ident, t), t)
    assert params_close(auto_compose(t, ident), t)
    assert params_close(auto_compose(t, auto_inverse(t)), ident)
    assert params_close(auto_inverse(ident), ident)


def test_inverse_of_rotation():
    xi1, xi2, omega = cmath.exp(0.3j), cmath.exp(-1.1j), cmath.exp(2.0j)
    inv = auto_inverse(HexaAutomorphism(xi1, xi2, 0, 0, False, omega))
    want = HexaAutomorphism(xi1.conjugate(), xi2.conjugate(), 0, 0, False, omega.conjugate())
    assert params_close(inv, want)


def test_flip_twice():
    t = HexaAutomorphism(cmath.exp(0.2j), 1, 0.3, -0.1j, True, 1)
    c = auto_compose(t, t)
    assert not c.flip
    p = HexaPoint.of(0.1, 0.2, -0.3j, 0.05)
    assert coords_close(c(p), t(t(p)), 1e-12)


def test_canonical_form_faithful(rng):
    # the same map built two ways canonicalizes to the same parameters
    for _ in range(20):
        t1, t2 = random_automorphism(rng), random_automorphism(rng)
        c = auto_compose(t1, t2)
        again = auto_inverse(auto_inverse(c))
        assert params_close(c, again)


def test_parameter_validation():
    with pytest.raises(ValueError):
        HexaAutomorphism(z1=1.0)
    with pytest.raises(ValueError):
        HexaAutomorphism(xi1=0.5)


def test_pole():
    t = HexaAutomorphism(z1=0.5)
    with pytest.raises(PoleError):
        fiber_multiplier(t, HexaPoint.of(0, 2, 0, 0).x)


def test_normalize_examples():
    t, r, a_mod = normalize_point(HexaPoint.of(0.3j, 0, 0, 0.4))
    assert r == pytest.approx(0.4, abs=1e-15) and a_mod == pytest.approx(0.3, abs=1e-15)
    x1 = 0.5 - 0.2j
    a = 0.4
    t, r, a_mod = normalize_point(HexaPoint.of(a, x1, 0, 0))
    assert r <= 1e-10
    # one displayed-instance step: a -> a / sqrt(1 - |x1|^2), at most the fiber radius 1
    assert a_mod == pytest.approx(a / math.sqrt(1 - abs(x1) ** 2), abs=1e-12)


@given(hexa_members(), st.integers(0, 2**32 - 1))
def test_normalize_invariant(p, seed):
    t, r, a_mod = normalize_point(p)
    q = t(p)
    assert max(abs(q.x.x1), abs(q.x.x2)) <= 1e-10
    assert q.x.x3 == pytest.approx(r, abs=1e-10)
    assert q.a == pytest.approx(a_mod, abs=1e-10)
    rng = np.random.Generator(np.random.PCG64(seed))
    s = random_automorphism(rng)
    _, r2, a2 = normalize_point(s(p))
    assert r2 == pytest.approx(r, abs=1e-6)
    assert a2 == pytest.approx(a_mod, abs=1e-6)
