import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import angles, disc_points, matrices, unimodulars
from hexablock import (
    DiscAutomorphism,
    Matrix2,
    blaschke,
    mobius_apply,
    mobius_compose,
    mobius_invert,
    op_norm,
    spectral_radius,
)
from hexablock.core import PoleError, default_rng, random_disc_automorphism, random_unitary


@st.composite
def disc_automorphisms(draw):
    return DiscAutomorphism(draw(unimodulars()), draw(disc_points(0.95)))


def test_op_norm_examples():
    assert op_norm(Matrix2.identity()) == pytest.approx(1.0, abs=1e-15)
    assert op_norm(Matrix2.diag(0.5, 0.3)) == pytest.approx(0.5, abs=1e-15)
    assert op_norm(Matrix2(0, 1, 0, 0)) == pytest.approx(1.0, abs=1e-15)


def test_op_norm_matches_svd(rng):
    for _ in range(200):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert op_norm(Matrix2.from_array(m)) == pytest.approx(np.linalg.svd(m, compute_uv=False)[0], rel=1e-12)


def test_spectral_radius_examples(rng):
    assert spectral_radius(Matrix2.identity()) == pytest.approx(1.0)
    assert spectral_radius(Matrix2(0, 1, 0, 0)) == 0.0
    for _ in range(100):
        m = Matrix2.from_array(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        # roots of the characteristic polynomial via the companion matrix
        roots = np.roots([1.0, -m.trace, m.det])
        assert spectral_radius(m) == pytest.approx(max(abs(roots)), rel=1e-10)


@given(matrices())
def test_op_norm_dominates_spectral_radius(m):
    assert op_norm(m) >= spectral_radius(m) - 1e-10


@given(matrices(), st.integers(0, 2**32 - 1))
def test_op_norm_unitarily_invariant(m, seed):
    rng = default_rng(seed)
    u, v = random_unitary(rng), random_unitary(rng)
    rot = Matrix2.diag(cmath.exp(1j * rng.uniform(0, 6)), 1)
    assert op_norm(u @ m @ v @ rot) == pytest.approx(op_norm(m), abs=1e-10)


def test_blaschke_examples():
    alpha = 0.3 - 0.4j
    assert abs(blaschke(alpha, alpha)) == 0
    assert blaschke(0, 0.25 + 0.5j) == pytest.approx(-(0.25 + 0.5j))
    for theta in np.linspace(0, 2 * np.pi, 17):
        assert abs(blaschke(alpha, cmath.exp(1j * theta))) == pytest.approx(1.0, abs=1e-14)


def test_blaschke_pole():
    alpha = 0.5
    with pytest.raises(PoleError):
        blaschke(alpha, 1 / alpha)


def test_mobius_examples():
    m = DiscAutomorphism(cmath.exp(0.7j), 0.2 + 0.5j)
    assert mobius_apply(DiscAutomorphism(), 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j)
    assert abs(mobius_apply(m, m.alpha)) < 1e-15
    assert abs(mobius_apply(m, cmath.exp(2j))) == pytest.approx(1.0, abs=1e-14)


def test_disc_automorphism_validation():
    with pytest.raises(ValueError):
        DiscAutomorphism(1.0, 1.0)
    with pytest.raises(ValueError):
        DiscAutomorphism(1.1, 0.0)
    # near-unimodular input is renormalized exactly
    assert abs(DiscAutomorphism(1 + 1e-13, 0).eta) == 1.0


@given(disc_automorphisms(), angles)
def test_mobius_preserves_circle(m, theta):
    assert abs(abs(mobius_apply(m, cmath.exp(1j * theta))) - 1) <= 1e-12


@given(disc_automorphisms(), disc_points(0.999))
def test_mobius_maps_disc_into_disc(m, lam):
    assert abs(mobius_apply(m, lam)) < 1


def test_compose_pointwise(rng):
    for _ in range(50):
        m1, m2 = random_disc_automorphism(rng), random_disc_automorphism(rng)
        c = mobius_compose(m1, m2)
        for lam in rng.uniform(-0.7, 0.7, 100) + 1j * rng.uniform(-0.7, 0.7, 100):
            assert abs(mobius_apply(c, lam) - mobius_apply(m1, mobius_apply(m2, lam))) <= 1e-12


@given(disc_automorphisms())
def test_compose_identity_and_inverse(m):
    ident = DiscAutomorphism.identity()
    c = mobius_compose(ident, m)
    assert abs(c.eta - m.eta) <= 1e-12 and abs(c.alpha - m.alpha) <= 1e-12
    back = mobius_compose(m, mobius_invert(m))
    assert abs(back.eta - 1) <= 1e-12 and abs(back.alpha) <= 1e-12
    back = mobius_compose(mobius_invert(m), m)
    assert abs(back.eta - 1) <= 1e-12 and abs(back.alpha) <= 1e-12


@given(disc_automorphisms(), disc_automorphisms(), disc_automorphisms(), disc_points(0.9))
def test_compose_associative(m1, m2, m3, lam):
    lhs = mobius_compose(mobius_compose(m1, m2), m3)
    rhs = mobius_compose(m1, mobius_compose(m2, m3))
    assert abs(mobius_apply(lhs, lam) - mobius_apply(rhs, lam)) <= 1e-10


def test_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        Matrix2(math.nan, 0, 0, 0)


def test_seeded_rng_is_reproducible():
    a = default_rng(5).uniform(size=4)
    b = default_rng(5).uniform(size=4)
    assert np.array_equal(a, b)


def test_op_norm_equal_singular_values(rng):
    # scaled unitaries have coincident singular values, where the quadratic root loses digits
    for _ in range(50):
        c = rng.uniform(0.1, 3.0)
        u = random_unitary(rng)
        m = Matrix2(*(c * e for e in u.entries()))
        assert op_norm(m) == pytest.approx(c, rel=1e-14)
