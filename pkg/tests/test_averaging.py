import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chirogeom import averaging as av
from chirogeom import dipoles as dp
from chirogeom.core_math import X_HAT, Y_HAT, Z_HAT, so3_quadrature
from chirogeom.fields import PulsePair

E = np.array([0.0, 0.6, 0.8])

# Frozen from a direct SO(3) quadrature average (8 x 14 x 14 nodes) over the
# seed-1 time-reversal-symmetric set at k = 1, tau = 1.3, default pulses.
ORACLE = {
    "LinCirc": (0.3886741904678855, 0.07225756151480513, 6.532784238395658),
    "CircLin": (-0.6874476066006898, -0.14836603254425415, 6.532784238395657),
    "CircCirc": (-0.19027117757362852, -0.07610847102945045, 7.925783094148134),
}
MAKERS = {"LinCirc": PulsePair.lin_circ, "CircLin": PulsePair.circ_lin, "CircCirc": PulsePair.circ_circ}

cvec = st.tuples(*[st.floats(-3, 3)] * 6).map(lambda t: np.array(t[:3]) + 1j * np.array(t[3:]))


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_frozen_oracle_values(sym_set, name):
    pp = MAKERS[name](1, tau=1.3)
    scalar, orient_z, w = ORACLE[name]
    assert av.avg_scalar(sym_set, pp, E) == pytest.approx(scalar, rel=1e-12)
    assert av.orient_avg(sym_set, pp, E).orient_z == pytest.approx(orient_z, rel=1e-12)
    assert av.avg_yield(sym_set, pp) == pytest.approx(w, rel=1e-12)


@given(cvec, cvec, cvec, cvec)
@settings(max_examples=30, deadline=None)
def test_rank2_identity(a, b, u, v):
    g = so3_quadrature(2, 3, 3)
    r = g.rotations
    quad = g.average((r @ u) @ a * ((r @ v) @ b))
    assert abs(quad - av.avg_rank2(a, b, u, v)) <= 1e-12 * (1 + np.abs(a).max() * np.abs(b).max() * np.abs(u).max() * np.abs(v).max())


def test_rank4_identities(rng):
    g = so3_quadrature(3, 5, 5)
    r = g.rotations
    for _ in range(10):
        a, b, c, d, u, v, w, x = (rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(8))
        vec = g.average(((r @ u) @ a * ((r @ v) @ b) * ((r @ w) @ c))[:, None] * (r @ x))
        np.testing.assert_allclose(av.avg_rank4_vector(a, b, c, u, v, w, x), vec, rtol=1e-12, atol=1e-12)
        sca = g.average((r @ u) @ a * ((r @ v) @ b) * ((r @ w) @ c) * ((r @ x) @ d))
        assert av.avg_rank4_scalar(a, b, c, d, u, v, w, x) == pytest.approx(sca, rel=1e-12)


def test_rank4_aligned_case_is_exact():
    out = av.avg_rank4_vector(Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT)
    assert np.array_equal(out, 0.2 * Z_HAT)
    np.testing.assert_array_equal(av.M4, np.array([[4, -1, -1], [-1, 4, -1], [-1, -1, 4]]) / 30)


def test_closed_forms_match_oracle(any_set, pulses):
    g = so3_quadrature(4, 7, 7)
    assert av.avg_scalar(any_set, pulses, E) == pytest.approx(av.oracle_scalar(any_set, pulses, E, g), rel=1e-10)
    vec = av.avg_orientation_vector(any_set, pulses, E)
    np.testing.assert_allclose(vec, av.oracle_orientation_yield(any_set, pulses, E, g), rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(vec, av.oracle_orientation_curvature(any_set, pulses, E, g), rtol=1e-10, atol=1e-12)
    assert av.avg_yield(any_set, pulses) == pytest.approx(av.oracle_yield(any_set, pulses, g), rel=1e-12)


def test_sin_law_forms_match_general_forms(sym_set, pulses):
    for e in (E, av.e_along_p12_plus(sym_set), av.e_along_d1_cross_d2(sym_set)):
        assert av.sin_law_scalar(sym_set, pulses, e) == pytest.approx(av.avg_scalar(sym_set, pulses, e), rel=1e-10)
        assert av.sin_law_orientation(sym_set, pulses, e) == pytest.approx(
            av.orient_avg(sym_set, pulses, e).orient_z, rel=1e-10)


def test_sin_law_orientation_needs_in_plane_axis(sym_set):
    with pytest.raises(ValueError):
        av.sin_law_orientation(sym_set, PulsePair.lin_circ(1, axis=Z_HAT, tau=1.0), E)


def test_sin_law_parts_per_sequence(sym_set):
    parts = av.sin_law_scalar_parts(sym_set, PulsePair.lin_circ(1, tau=1.0), E)
    assert parts["exc"] == 0.0 and parts["mix"] == 0.0
    parts = av.sin_law_scalar_parts(sym_set, PulsePair.circ_lin(1, tau=1.0), E)
    assert parts["ion"] == 0.0 and parts["mix"] == 0.0


def test_transverse_orientation_vanishes(any_set, pulses):
    o = av.orient_avg(any_set, pulses, E)
    assert abs(o.orient_x) <= 1e-13 * o.yield_mean and abs(o.orient_y) <= 1e-13 * o.yield_mean
    assert o.orientation.shape == (3,)


def test_helicity_flip(any_set, pulses):
    a = av.orient_avg(any_set, pulses, E).orient_z
    b = av.orient_avg(any_set, pulses.flipped(), E).orient_z
    assert b == pytest.approx(-a, rel=1e-12)


def test_enantiomer_flip(any_set, pulses):
    m = dp.mirror(any_set)
    a = av.orient_avg(any_set, pulses, E).orient_z
    b = av.orient_avg(m, pulses, dp.MIRROR @ E).orient_z
    assert b == pytest.approx(-a, rel=1e-10)


def test_isotropic_dichroic_yield_vanishes(any_set, pulses):
    assert abs(av.avg_dichroic_yield(any_set, pulses)) <= 1e-13 * av.avg_yield(any_set, pulses)
    g = so3_quadrature(4, 7, 7)
    assert abs(av.oracle_dichroic_yield(any_set, pulses, g)) <= 1e-13 * av.avg_yield(any_set, pulses)


def test_yield_mean_is_delay_average(sym_set, pulses):
    taus = np.linspace(0, 2 * np.pi / pulses.omega12, 16, endpoint=False)
    mean = np.mean([av.avg_yield(sym_set, pulses.with_tau(t)) for t in taus])
    assert av.yield_mean(sym_set, pulses) == pytest.approx(mean, rel=1e-12)


def test_cos_beta_bounded(any_set, pulses):
    o = av.orient_avg(any_set, pulses, E)
    assert abs(o.cos_beta) <= 1.0
    assert o.cos_beta == pytest.approx(o.orient_z / o.yield_mean)


def test_alignment_factor_circcirc(sym_set):
    pp = PulsePair.circ_circ(1, tau=0.9)
    for e in (E, X_HAT, Y_HAT):
        o = av.orient_avg(sym_set, pp, e)
        assert o.orient_z / (pp.sigma * o.scalar) == pytest.approx(0.4, rel=1e-10)
    assert av.r_factor_diagnostic(sym_set, pp, E) == 0.4


def test_alignment_factor_diagnostics(sym_set):
    lc = PulsePair.lin_circ(1, tau=0.9)
    e = av.e_along_p12_plus(sym_set)
    o = av.orient_avg(sym_set, lc, e)
    assert o.orient_z / o.scalar == pytest.approx(av.r_factor_diagnostic(sym_set, lc, e), rel=1e-10)
    cl = PulsePair.circ_lin(1, tau=0.9)
    e = av.e_along_d1_cross_d2(sym_set)
    o = av.orient_avg(sym_set, cl, e)
    assert o.orient_z / o.scalar == pytest.approx(av.r_factor_diagnostic(sym_set, cl, e), rel=1e-10)


def test_e_ref_must_be_unit(sym_set):
    with pytest.raises(ValueError):
        av.avg_scalar(sym_set, PulsePair.lin_circ(1), np.array([0.0, 0.0, 2.0]))
