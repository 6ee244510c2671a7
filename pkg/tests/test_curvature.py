import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chirogeom import curvature as cv
from chirogeom.core_math import EulerAngles, cross, rotation_matrix, sphere_quadrature
from chirogeom.fields import PulsePair
from chirogeom.perturbation import dichroic_yield_fixed

seeds = st.integers(0, 2**32 - 1)


def _rho(seed):
    return EulerAngles.random(np.random.default_rng(seed))


def test_closed_form_matches_finite_difference(any_set, pulses, rng):
    for _ in range(5):
        rho = EulerAngles.random(rng)
        fd = cv.curvature_fd(any_set, pulses, rho, 1e-4)
        cf = cv.curvature(any_set, pulses, rho).total.omega
        np.testing.assert_allclose(cf, fd.omega, rtol=1e-7, atol=1e-7 * np.abs(fd.omega).max())
        assert fd.imag_residual <= 1e-10 * np.linalg.norm(fd.omega)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_dichroic_yield_equals_curvature_projection(seed):
    # W_sigma - W_-sigma = sigma (Omega_sigma + Omega_-sigma) . z_lab
    from chirogeom import generate_synthetic

    rng = np.random.default_rng(seed)
    s = generate_synthetic(int(rng.integers(1000)), 2, bool(rng.integers(2)), sphere_quadrature(4, 8))
    for pp in (PulsePair.lin_circ(1, tau=1.1), PulsePair.circ_lin(-1, tau=0.4), PulsePair.circ_circ(1, tau=2.0)):
        rho = EulerAngles.random(rng)
        r = rotation_matrix(rho)
        om = cv.curvature(s, pp, rho).total.omega + cv.curvature(s, pp.flipped(), rho).total.omega
        lhs = dichroic_yield_fixed(s, pp, rho)
        assert lhs == pytest.approx(pp.sigma * (r @ om)[2], rel=1e-10, abs=1e-12)


def test_sequence_specific_entry_points(sym_set):
    rho = _rho(3)
    lc, cl, cc = PulsePair.lin_circ(1, tau=1.0), PulsePair.circ_lin(1, tau=1.0), PulsePair.circ_circ(1, tau=1.0)
    assert np.allclose(cv.curvature_ion(sym_set, lc, rho).omega, cv.curvature(sym_set, lc, rho).ion.omega)
    assert np.allclose(cv.curvature_exc(sym_set, cl, rho).omega, cv.curvature(sym_set, cl, rho).exc.omega)
    assert cv.curvature_circcirc(sym_set, cc, rho).total.frame == "molecular"
    with pytest.raises(ValueError):
        cv.curvature_ion(sym_set, cl, rho)
    with pytest.raises(ValueError):
        cv.curvature_exc(sym_set, lc, rho)


def test_direction_laws_for_symmetric_data(sym_set):
    rho = _rho(5)
    ion = cv.curvature(sym_set, PulsePair.lin_circ(1, tau=1.0), rho).ion.omega
    assert np.linalg.norm(np.cross(ion, cv.p12_plus(sym_set))) <= 1e-12 * np.linalg.norm(ion) * np.linalg.norm(cv.p12_plus(sym_set))
    exc = cv.curvature(sym_set, PulsePair.circ_lin(1, tau=1.0), rho).exc.omega
    w = cross(sym_set.d1, sym_set.d2)
    assert np.linalg.norm(np.cross(exc, w)) <= 1e-12 * np.linalg.norm(exc) * np.linalg.norm(w)


def test_zero_delay_null_for_symmetric_data(sym_set, pulses):
    from chirogeom import averaging as av

    p0 = pulses.with_tau(0.0)
    if pulses.sequence.value == "CircCirc":
        # same-path terms survive at fixed orientation; only the average vanishes
        e = np.array([0.0, 0.6, 0.8])
        assert abs(av.avg_scalar(sym_set, p0, e)) <= 1e-13
        assert abs(av.orient_avg(sym_set, p0, e).orient_z) <= 1e-13
    else:
        assert np.abs(cv.curvature(sym_set, p0, _rho(9)).total.omega).max() <= 1e-13


def test_batch_matches_single(any_set, pulses):
    rhos = [_rho(i) for i in range(4)]
    batch = cv.curvature_batch(any_set, pulses, np.array([rotation_matrix(r) for r in rhos]))
    for b, r in zip(batch, rhos):
        np.testing.assert_allclose(b, cv.curvature(any_set, pulses, r).total.omega, rtol=1e-12, atol=1e-14)


def test_central_gradient_is_second_order():
    f = lambda x: np.array([np.sin(x[0]) * np.exp(x[1])])
    x0 = np.array([0.4, -0.2])
    exact = np.array([[np.cos(0.4) * np.exp(-0.2)], [np.sin(0.4) * np.exp(-0.2)]])
    errs = [np.abs(cv.central_gradient(f, x0, h) - exact).max() for h in (0.1, 0.05, 0.025)]
    for a, b in zip(errs, errs[1:]):
        assert a / b == pytest.approx(4.0, rel=0.02)
    with pytest.raises(ValueError):
        cv.central_gradient(f, x0, 0.0)


def test_finite_difference_is_step_independent(asym_set, pulses):
    # the state is quadratic in the field displacement, so central differences are exact
    rho = _rho(11)
    a = cv.curvature_fd(asym_set, pulses, rho, 0.2).omega
    b = cv.curvature_fd(asym_set, pulses, rho, 1e-3).omega
    np.testing.assert_allclose(a, b, rtol=1e-9)


def test_stokes_loop(any_set, pulses, rng):
    rho = EulerAngles.random(rng)
    n = rng.normal(size=3)
    center = 0.2 * rng.normal(size=3)
    circ = cv.loop_circulation(any_set, pulses, rho, 1e-2, n, center)
    flux = cv.disk_flux(any_set, pulses, rho, 1e-2, n, center)
    assert circ == pytest.approx(flux, rel=1e-4)


def test_circulation_is_gauge_invariant(sym_set, pulses):
    rho = _rho(2)
    a = cv.loop_circulation(sym_set, pulses, rho, 0.05, phase=0.0)
    b = cv.loop_circulation(sym_set, pulses, rho, 0.05, phase=1.3)
    assert a == pytest.approx(b, rel=1e-10)


def test_flux_k_mismatch_and_no_spin(sym_set):
    g = sphere_quadrature(4, 8)
    with pytest.raises(ValueError):
        cv.flux_sphere(sym_set, PulsePair.lin_circ(1), g, k=sym_set.k + 1)


def test_sphere_flux_of_radial_field():
    g = sphere_quadrature(4, 8)
    assert cv.sphere_flux(lambda n: n, g) == pytest.approx(4 * np.pi, rel=1e-14)
    assert cv.sphere_flux(lambda n: np.broadcast_to([0.0, 0.0, 1.0], n.shape), g) == pytest.approx(0.0, abs=1e-14)


def test_spin_direction_rotations_hit_nodes():
    g = sphere_quadrature(4, 8)
    rots, n = cv.spin_direction_rotations(g, 5)
    np.testing.assert_allclose(rots[:, :, 2, :], np.broadcast_to(n[:, None, :], rots[:, :, 2, :].shape), atol=1e-14)
