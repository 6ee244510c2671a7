"""Isotropic orientation averages and enantio-sensitive orientation.

Analytic averages use the rank-2 and rank-4 isotropic tensor identities
over SO(3).  Brute-force quadrature oracles (``oracle_*``) evaluate the
same quantities directly on an :class:`SO3Grid`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core_math import Z_HAT, EulerAngles, Real3, SO3Grid, cross, dot, so3_quadrature
from .curvature import curvature_batch, curvature_terms, p12_plus
from .dipoles import DipoleSet
from .fields import PulsePair, Sequence
from .perturbation import yields_batch

M4 = np.array([[4.0, -1.0, -1.0], [-1.0, 4.0, -1.0], [-1.0, -1.0, 4.0]]) / 30.0


def default_oracle_grid() -> SO3Grid:
    """SO(3) grid exact to Wigner degree 6."""
    return so3_quadrature(4, 7, 7)


@dataclass(frozen=True)
class AveragedObservables:
    scalar: float
    orient_z: float
    cos_beta: float
    yield_mean: float
    orient_x: float = 0.0
    orient_y: float = 0.0

    @property
    def orientation(self) -> np.ndarray:
        return np.array([self.orient_x, self.orient_y, self.orient_z])


def avg_rank2(a, b, u, v):
    """Average of (a.u')(b.v') over orientations: (a.b)(u.v)/3."""
    return dot(a, b) * dot(u, v) / 3.0


def _pair_products(a, b, c, d):
    return dot(a, b) * dot(c, d), dot(a, c) * dot(b, d), dot(a, d) * dot(b, c)


def avg_rank4_scalar(a, b, c, d, u, v, w, x):
    """Average of (a.u')(b.v')(c.w')(d.x'); lab a..d, molecular u..x."""
    g = _pair_products(a, b, c, d)
    f = _pair_products(u, v, w, x)
    return sum(M4[i, j] * g[i] * f[j] for i in range(3) for j in range(3))


def avg_rank4_vector(a, b, c, u, v, w, x):
    """Lab vector average of (a.u')(b.v')(w'.c) x' (nine-term identity).

    Molecular inputs may carry a leading node axis; the result then does too.
    """
    a, b, c = (np.asarray(t) for t in (a, b, c))
    ab, ac, bc = dot(a, b), dot(a, c), dot(b, c)
    uv_wx = (dot(u, v) * dot(w, x))[..., None]
    uw_vx = (dot(u, w) * dot(v, x))[..., None]
    ux_vw = (dot(u, x) * dot(v, w))[..., None]
    return (
        c * ab * (4.0 * uv_wx - uw_vx - ux_vw)
        + b * ac * (-uv_wx + 4.0 * uw_vx - ux_vw)
        + a * bc * (-uv_wx - uw_vx + 4.0 * ux_vw)
    ) / 30.0


def _check_unit(e_ref) -> np.ndarray:
    e = np.asarray(e_ref, dtype=float)
    if e.shape != (3,) or abs(np.linalg.norm(e) - 1.0) > 1e-12:
        raise ValueError("e_ref must be a unit 3-vector")
    return e


def e_along_p12_plus(dset: DipoleSet) -> Real3:
    p = p12_plus(dset)
    return p / np.linalg.norm(p)


def e_along_d1_cross_d2(dset: DipoleSet) -> Real3:
    w = cross(dset.d1, dset.d2)
    return w / np.linalg.norm(w)


def _all_terms(dset, pulses):
    return [t for ts in curvature_terms(dset, pulses).values() for t in ts]


def avg_scalar(dset: DipoleSet, pulses: PulsePair, e_ref) -> float:
    """Orientation average of Omega . e_ref (both molecular frame)."""
    e = _check_unit(e_ref)
    total = 0.0
    for t in _all_terms(dset, pulses):
        total += np.imag(t.coef * np.sum(avg_rank2(t.lab_a, t.lab_b, t.u, t.v) * (t.w @ e)))
    return float(total)


def avg_orientation_vector(dset: DipoleSet, pulses: PulsePair, e_ref) -> np.ndarray:
    """sigma <(Omega^L . z) e^L>, from the rank-4 identity."""
    e = _check_unit(e_ref)
    total = np.zeros(3)
    for t in _all_terms(dset, pulses):
        vec = avg_rank4_vector(t.lab_a, t.lab_b, Z_HAT, t.u, t.v, t.w, e)
        total += np.imag(t.coef * vec.sum(axis=0))
    return pulses.sigma * total


def _yield_pairs(dset: DipoleSet, pulses: PulsePair) -> np.ndarray:
    """2x2 matrix of averaged path products; W = sum_jl c_j* c_l m_jl."""
    q, p = pulses.pump_vector(), pulses.probe_vector()
    d = (dset.d1, dset.d2)
    D = (dset.D1, dset.D2)
    m = np.zeros((2, 2), dtype=complex)
    for j in range(2):
        for l in range(2):
            vals = avg_rank4_scalar(p.conj(), q.conj(), p, q, np.conj(D[j]), d[j], D[l], d[l])
            m[j, l] = dset.continuum.integrate(vals)
    return m


def avg_yield(dset: DipoleSet, pulses: PulsePair) -> float:
    """Orientation-averaged yield at the pulse pair's delay."""
    c = pulses.path_weights
    return float(np.real(np.conj(c) @ _yield_pairs(dset, pulses) @ c))


def yield_mean(dset: DipoleSet, pulses: PulsePair) -> float:
    """Orientation-averaged yield, averaged over one beat period 2 pi/omega12.

    The cross-path terms oscillate as exp(i omega12 tau) and drop out; with
    degenerate frequencies there is no beat and the full yield is returned.
    """
    if pulses.omega12 == 0.0:
        return avg_yield(dset, pulses)
    m = _yield_pairs(dset, pulses)
    return float(np.real(np.sum(np.abs(pulses.path_weights) ** 2 * np.diag(m))))


def avg_dichroic_yield(dset: DipoleSet, pulses: PulsePair) -> float:
    return avg_yield(dset, pulses) - avg_yield(dset, pulses.flipped())


def orient_avg(dset: DipoleSet, pulses: PulsePair, e_ref) -> AveragedObservables:
    vec = avg_orientation_vector(dset, pulses, e_ref)
    w_bar = yield_mean(dset, pulses)
    return AveragedObservables(
        scalar=avg_scalar(dset, pulses, e_ref),
        orient_z=float(vec[2]),
        cos_beta=float(vec[2] / w_bar) if w_bar > 0 else 0.0,
        yield_mean=w_bar,
        orient_x=float(vec[0]),
        orient_y=float(vec[1]),
    )


# ------------------------------------------- forms for time-reversal-symmetric sets


def _linear_axis_in_plane(pulses: PulsePair):
    pol = pulses.pump if pulses.sequence is Sequence.LIN_CIRC else pulses.probe
    if abs(pol.axis[2]) > 1e-12:
        raise ValueError("sin-law orientation form needs the linear axis in the xy-plane")


def sin_law_scalar_parts(dset: DipoleSet, pulses: PulsePair, e_ref) -> dict[str, float]:
    """exc/ion/mix parts of <Omega . e> for time-reversal-symmetric continuum data.

    Every part is proportional to sin(omega12 tau).
    """
    e = _check_unit(e_ref)
    C, s = pulses.C, np.sin(pulses.omega12 * pulses.tau)
    integ = dset.continuum.integrate
    d1, d2, D1, D2 = dset.d1, dset.d2, dset.D1, dset.D2
    w12 = cross(d1, d2) @ e
    parts = {"exc": 0.0, "ion": 0.0, "mix": 0.0}
    if pulses.sequence is Sequence.LIN_CIRC:
        parts["ion"] = -2.0 / 3.0 * C * dot(d1, d2) * (p12_plus(dset) @ e) * s
    elif pulses.sequence is Sequence.CIRC_LIN:
        parts["exc"] = -1.0 / 3.0 * C * integ(dot(np.conj(D1), D2)).real * w12 * s
    else:
        parts["exc"] = -1.0 / 6.0 * C * integ(dot(np.conj(D1), D2)).real * w12 * s
        parts["ion"] = -1.0 / 3.0 * C * dot(d1, d2) * (p12_plus(dset) @ e) * s
        mix = dot(d1, D2) * (cross(np.conj(D1), d2) @ e) + dot(np.conj(D1), d2) * (cross(d1, D2) @ e)
        parts["mix"] = -1.0 / 6.0 * C * integ(mix).real * s
    return {k: float(v) for k, v in parts.items()}


def sin_law_scalar(dset: DipoleSet, pulses: PulsePair, e_ref) -> float:
    return sum(sin_law_scalar_parts(dset, pulses, e_ref).values())


def sin_law_orientation(dset: DipoleSet, pulses: PulsePair, e_ref) -> float:
    """z component of the orientation vector for time-reversal-symmetric data."""
    e = _check_unit(e_ref)
    C, sigma = pulses.C, pulses.sigma
    phase21 = np.exp(-1j * pulses.omega12 * pulses.tau)
    integ = dset.continuum.integrate
    d1, d2, D1, D2 = dset.d1, dset.d2, dset.D1, dset.D2
    if pulses.sequence is Sequence.LIN_CIRC:
        _linear_axis_in_plane(pulses)
        p = p12_plus(dset)
        bracket = 4.0 * dot(d1, d2) * (p @ e) - dot(d1, p) * dot(d2, e) - dot(d1, e) * dot(d2, p)
        return float(-sigma / 15.0 * C * np.sin(pulses.omega12 * pulses.tau) * bracket)
    if pulses.sequence is Sequence.CIRC_LIN:
        _linear_axis_in_plane(pulses)
        w21 = cross(d2, d1)
        D2c = np.conj(D2)
        x = integ(4.0 * dot(D2c, D1) * (e @ w21) - dot(D2c, e) * (D1 @ w21) - dot(D1, e) * (D2c @ w21))
        return float(2.0 * np.real(1j * sigma / 60.0 * C * x * phase21))
    D2c = np.conj(D2)
    x = integ(
        dot(d2, d1) * (cross(D2c, D1) @ e)
        + dot(D2c, D1) * (cross(d2, d1) @ e)
        + dot(D1, d2) * (cross(D2c, d1) @ e)
        + dot(D2c, d1) * (cross(d2, D1) @ e)
    )
    return float(2.0 * np.real(1j * sigma / 30.0 * C * x * phase21))


def r_factor_diagnostic(dset: DipoleSet, pulses: PulsePair, e_ref) -> float:
    """Alignment factor orient_z / (sigma <Omega . e>) predicted for e_ref.

    LinCirc: (2/5)[1 - (d1.e)(d2.e) / (2 d1.d2)], exact when e_ref lies along
    P12+ and the continuum data are time-reversal symmetric.
    CircLin: (2/5)[1 - Re int (D1*.e)(D2.e) / (2 Re int D1*.D2)], exact when
    e_ref lies along d1 x d2.
    CircCirc: 2/5 for any e_ref.
    """
    e = _check_unit(e_ref)
    if pulses.sequence is Sequence.LIN_CIRC:
        return float(0.4 * (1.0 - 0.5 * dot(dset.d1, e) * dot(dset.d2, e) / dot(dset.d1, dset.d2)))
    if pulses.sequence is Sequence.CIRC_LIN:
        integ = dset.continuum.integrate
        num = integ(dot(np.conj(dset.D1), e) * dot(dset.D2, e)).real
        den = integ(dot(np.conj(dset.D1), dset.D2)).real
        return float(0.4 * (1.0 - 0.5 * num / den))
    return 0.4


# -------------------------------------------------------------------- oracles


def so3_oracle_average(integrand: Callable[[EulerAngles], object], grid: SO3Grid | None = None):
    """Haar average of ``integrand(rho)`` by direct quadrature, in node order."""
    grid = default_oracle_grid() if grid is None else grid
    values = np.array([np.asarray(integrand(rho)) for rho in grid.nodes])
    return grid.average(values)


def oracle_scalar(dset, pulses, e_ref, grid: SO3Grid | None = None) -> float:
    """Quadrature average of Omega(rho) . e_ref with the closed-form curvature."""
    grid = default_oracle_grid() if grid is None else grid
    omega = curvature_batch(dset, pulses, grid.rotations)
    return float(grid.average(omega @ _check_unit(e_ref)))


def oracle_orientation_curvature(dset, pulses, e_ref, grid: SO3Grid | None = None) -> np.ndarray:
    """Quadrature average of sigma (Omega^L . z) e^L."""
    grid = default_oracle_grid() if grid is None else grid
    r = grid.rotations
    omega_z = np.einsum("mi,mi->m", curvature_batch(dset, pulses, r), r[:, 2, :])
    e_lab = r @ _check_unit(e_ref)
    return pulses.sigma * grid.average(omega_z[:, None] * e_lab)


def oracle_orientation_yield(dset, pulses, e_ref, grid: SO3Grid | None = None) -> np.ndarray:
    """Quadrature average of W_sigma(rho) e^L; no curvature involved."""
    grid = default_oracle_grid() if grid is None else grid
    r = grid.rotations
    w = yields_batch(dset, pulses, r)
    return grid.average(w[:, None] * (r @ _check_unit(e_ref)))


def oracle_yield(dset, pulses, grid: SO3Grid | None = None) -> float:
    grid = default_oracle_grid() if grid is None else grid
    return float(grid.average(yields_batch(dset, pulses, grid.rotations)))


def oracle_dichroic_yield(dset, pulses, grid: SO3Grid | None = None, weight=None) -> float:
    """Quadrature average of (W_sigma - W_-sigma), optionally weighted by g(R^T z)."""
    grid = default_oracle_grid() if grid is None else grid
    r = grid.rotations
    dw = yields_batch(dset, pulses, r) - yields_batch(dset, pulses.flipped(), r)
    if weight is not None:
        dw = dw * np.asarray(weight(r[:, 2, :]))
    return float(grid.average(dw))
