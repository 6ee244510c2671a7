import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chirogeom.checks import monomial_moment
from chirogeom.core_math import (
    EulerAngles,
    cross,
    dot,
    rotation_matrices,
    rotation_matrix,
    so3_quadrature,
    sphere_quadrature,
    unit,
)

angles = st.tuples(
    st.floats(0.0, 2 * math.pi, exclude_max=True),
    st.floats(0.0, math.pi),
    st.floats(0.0, 2 * math.pi, exclude_max=True),
)
finite = st.floats(-10.0, 10.0, allow_nan=False)
cvec = st.tuples(*[st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)] * 3).map(np.array)


@given(angles)
def test_rotation_is_proper_orthogonal(a):
    r = rotation_matrix(EulerAngles(*a))
    np.testing.assert_allclose(r @ r.T, np.eye(3), atol=1e-14)
    assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-14)


@given(angles, st.tuples(finite, finite, finite))
def test_rotation_preserves_norm(a, v):
    v = np.array(v)
    assert np.linalg.norm(rotation_matrix(EulerAngles(*a)) @ v) == pytest.approx(np.linalg.norm(v), abs=1e-12)


@given(angles, angles)
@settings(max_examples=50)
def test_rotation_homomorphism(a, b):
    prod = rotation_matrix(EulerAngles(*a)) @ rotation_matrix(EulerAngles(*b))
    np.testing.assert_allclose(rotation_matrix(EulerAngles.from_matrix(prod)), prod, atol=1e-12)


def test_zyz_convention():
    r = rotation_matrix(EulerAngles(math.pi / 2, 0.0, 0.0))
    np.testing.assert_allclose(r @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-15)
    r = rotation_matrix(EulerAngles(0.0, math.pi / 2, 0.0))
    np.testing.assert_allclose(r @ [0.0, 0.0, 1.0], [1.0, 0.0, 0.0], atol=1e-15)


def test_from_matrix_gimbal_lock():
    for theta in (0.0, math.pi):
        r = rotation_matrix(EulerAngles(0.4, theta, 1.1))
        np.testing.assert_allclose(rotation_matrix(EulerAngles.from_matrix(r)), r, atol=1e-14)


def test_euler_validation():
    with pytest.raises(ValueError):
        EulerAngles(0.0, 4.0, 0.0)
    with pytest.raises(ValueError):
        EulerAngles(-0.1, 1.0, 0.0)
    w = EulerAngles.wrapped(-0.1, 1.0, 7.0)
    assert 0 <= w.phi < 2 * math.pi and 0 <= w.chi < 2 * math.pi


def test_vectorised_rotations_match_scalar(rng):
    p, t, c = rng.uniform(0, 2 * np.pi, 5), rng.uniform(0, np.pi, 5), rng.uniform(0, 2 * np.pi, 5)
    stack = rotation_matrices(p, t, c)
    for i in range(5):
        np.testing.assert_allclose(stack[i], rotation_matrix(EulerAngles(p[i], t[i], c[i])), atol=1e-15)


@given(cvec, cvec, cvec, cvec)
def test_binet_cauchy(u, v, x, y):
    lhs = dot(cross(u, v), cross(x, y))
    rhs = dot(u, x) * dot(v, y) - dot(u, y) * dot(v, x)
    assert abs(lhs - rhs) <= 1e-11 * (1.0 + abs(u).max() * abs(v).max() * abs(x).max() * abs(y).max())


def test_dot_is_bilinear():
    a = np.array([1j, 0, 0])
    assert dot(a, a) == -1.0


def test_unit_rejects_zero():
    with pytest.raises(ValueError):
        unit(np.zeros(3))


@pytest.mark.parametrize("n_theta,n_phi", [(4, 8), (6, 12), (8, 16)])
def test_sphere_quadrature_exact_for_polynomials(n_theta, n_phi):
    g = sphere_quadrature(n_theta, n_phi)
    n = g.directions
    deg = g.degree
    for a in range(deg + 1):
        for b in range(deg + 1 - a):
            for c in range(deg + 1 - a - b):
                val = g.integrate(n[:, 0] ** a * n[:, 1] ** b * n[:, 2] ** c)
                assert val == pytest.approx(monomial_moment(a, b, c), abs=1e-12)


def test_sphere_grid_total_weight_and_closure():
    g = sphere_quadrature(6, 12)
    assert g.integrate(np.ones(len(g))) == pytest.approx(4 * np.pi, rel=1e-14)
    assert g.antipodally_closed
    assert g.node_permutation(np.diag([1.0, 1.0, -1.0])) is not None
    assert not sphere_quadrature(5, 7).antipodally_closed


def test_sphere_grid_arrays_read_only():
    g = sphere_quadrature(4, 8)
    with pytest.raises(ValueError):
        g.weights[0] = 1.0


def test_so3_quadrature_normalised_and_exact():
    g = so3_quadrature(4, 7, 7)
    assert g.average(np.ones(len(g))) == pytest.approx(1.0, rel=1e-14)
    r = g.rotations
    # <R_ij R_kl> = delta_ik delta_jl / 3
    m = g.average(np.einsum("mij,mkl->mijkl", r, r))
    np.testing.assert_allclose(m, np.einsum("ik,jl->ijkl", np.eye(3), np.eye(3)) / 3, atol=1e-14)
    assert g.average(r[:, 2, 2] ** 4) == pytest.approx(0.2, abs=1e-14)


def test_haar_random_rotation_is_uniform():
    rng = np.random.default_rng(0)
    z = np.array([rotation_matrix(EulerAngles.random(rng))[2, 2] for _ in range(4000)])
    # cos(theta) is uniform on [-1, 1]
    assert abs(z.mean()) < 0.05
    assert abs((z**2).mean() - 1 / 3) < 0.03
