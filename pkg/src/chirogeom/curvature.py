"""Geometric curvature of the two-photon state in field-orientation space.

The state is the amplitude vector psi = (a1, a2, sqrt(w) a_k).  Its
curvature is Omega = i <grad psi| x |grad psi>, with the gradient taken over
the lab Cartesian components of the spin-carrying field vector(s).  The
field vector is displaced as e -> e + s u with s = 1/sqrt(2 m), where m is
the number of circular pulses.  For CircCirc both pulses move together.

Every closed form below is a sum of bilinear terms

    Im{ coef * sum_n (u_n . a')(v_n . b') w_n }

where a, b are lab-frame field vectors, primes denote the molecular frame
and u, v, w are molecular vectors built from the dipoles.  The same term
list drives the orientation averages in :mod:`chirogeom.averaging`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from .core_math import (
    TWO_PI,
    Z_HAT,
    EulerAngles,
    Real3,
    SphereGrid,
    cross,
    rotation_matrices,
    rotation_matrix,
)
from .dipoles import DipoleSet
from .fields import PulsePair, Sequence
from .perturbation import amplitudes_molecular


@dataclass(frozen=True, eq=False)
class CurvatureVector:
    omega: Real3
    imag_residual: float = 0.0
    frame: str = "molecular"

    def __post_init__(self):
        if self.frame not in ("molecular", "lab"):
            raise ValueError("frame must be 'molecular' or 'lab'")
        object.__setattr__(self, "omega", np.asarray(self.omega, dtype=float))

    def __add__(self, other: "CurvatureVector") -> "CurvatureVector":
        if other.frame != self.frame:
            raise ValueError("cannot add curvatures given in different frames")
        return CurvatureVector(
            self.omega + other.omega, self.imag_residual + other.imag_residual, self.frame
        )


@dataclass(frozen=True, eq=False)
class MixedCurvature:
    exc: CurvatureVector
    ion: CurvatureVector
    mix: CurvatureVector

    @property
    def total(self) -> CurvatureVector:
        return self.exc + self.ion + self.mix


# ---------------------------------------------------------------- closed forms


@dataclass(frozen=True, eq=False)
class Term:
    """Im{coef * sum_n (u_n . a')(v_n . b') w_n} with a, b lab vectors."""

    coef: complex
    lab_a: np.ndarray
    lab_b: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def evaluate(self, rotations: np.ndarray) -> np.ndarray:
        """Molecular-frame vector for each rotation in a (m, 3, 3) stack."""
        a_mol = np.einsum("mji,j->mi", rotations, self.lab_a)
        b_mol = np.einsum("mji,j->mi", rotations, self.lab_b)
        ua = np.einsum("ni,mi->mn", self.u, a_mol)
        vb = np.einsum("ni,mi->mn", self.v, b_mol)
        return np.imag(self.coef * np.einsum("mn,nc->mc", ua * vb, self.w))


def spin_scale(pulses: PulsePair) -> float:
    """Squared displacement scale s^2 = 1/(2m) of the field embedding."""
    return 1.0 / (2.0 * sum(pulses.spin_carrying))


def p12_plus(dset: DipoleSet) -> Real3:
    """Half the real part of the quadrature of D1* x D2."""
    return 0.5 * dset.continuum.integrate(cross(np.conj(dset.D1), dset.D2)).real


def _single(vec) -> np.ndarray:
    return np.asarray(vec, dtype=complex).reshape(1, 3)


def curvature_terms(dset: DipoleSet, pulses: PulsePair) -> dict[str, list[Term]]:
    """Closed-form curvature of any sequence, split into exc/ion/mix terms.

    Cross-path (j != l) terms carry C exp(i omega12 tau); same-path terms
    carry |c_j|^2 and vanish for time-reversal-symmetric continuum fields.
    """
    kappa = spin_scale(pulses)
    c = pulses.path_weights
    cross_coef = -2.0 * kappa * np.conj(c[0]) * c[1]
    same = np.abs(c) ** 2
    w = dset.grid.weights[:, None]
    d = (dset.d1, dset.d2)
    D = (dset.D1, dset.D2)
    q, p = pulses.pump_vector(), pulses.probe_vector()
    ion_vec = [
        dset.continuum.integrate(cross(np.conj(D[j]), D[l])) for j in range(2) for l in range(2)
    ]
    terms: dict[str, list[Term]] = {"exc": [], "ion": [], "mix": []}

    if pulses.sequence is Sequence.LIN_CIRC:
        terms["ion"].append(Term(cross_coef, q.conj(), q, _single(d[0]), _single(d[1]), _single(ion_vec[1])))
        for j in range(2):
            # i * int D_j* x D_j is real; Im{i * real} keeps it unchanged
            terms["ion"].append(
                Term(1j * kappa * same[j], q.conj(), q, _single(d[j]), _single(d[j]),
                     _single(1j * ion_vec[3 * j]))
            )
    elif pulses.sequence is Sequence.CIRC_LIN:
        terms["exc"].append(
            Term(cross_coef, p.conj(), p, np.conj(D[0]), D[1], w * cross(d[0], d[1]))
        )
    else:
        e = q
        terms["exc"].append(
            Term(cross_coef, e.conj(), e, np.conj(D[0]), D[1], w * cross(d[0], d[1]))
        )
        terms["ion"].append(Term(cross_coef, e.conj(), e, _single(d[0]), _single(d[1]), _single(ion_vec[1])))
        terms["mix"].append(
            Term(cross_coef, e.conj(), e, _single(d[0]).repeat(len(w), 0), D[1],
                 w * cross(np.conj(D[0]), d[1]))
        )
        terms["mix"].append(
            Term(cross_coef, e.conj(), e, np.conj(D[0]), _single(d[1]).repeat(len(w), 0),
                 w * cross(d[0], D[1]))
        )
        for j in range(2):
            terms["ion"].append(
                Term(1j * kappa * same[j], e.conj(), e, _single(d[j]), _single(d[j]),
                     _single(1j * ion_vec[3 * j]))
            )
            terms["mix"].append(
                Term(-2.0 * kappa * same[j], e.conj(), e, _single(d[j]).repeat(len(w), 0), D[j],
                     w * cross(np.conj(D[j]), d[j]))
            )
    return terms


def _evaluate(terms: list[Term], rotations: np.ndarray) -> np.ndarray:
    out = np.zeros((rotations.shape[0], 3))
    for t in terms:
        out += t.evaluate(rotations)
    return out


def _mixed(dset, pulses, rho) -> MixedCurvature:
    r = rotation_matrix(rho)[None]
    parts = {
        name: CurvatureVector(_evaluate(ts, r)[0])
        for name, ts in curvature_terms(dset, pulses).items()
    }
    return MixedCurvature(**parts)


def _require(pulses: PulsePair, seq: Sequence):
    if pulses.sequence is not seq:
        raise ValueError(f"expected a {seq.value} pulse pair, got {pulses.sequence.value}")


def curvature_ion(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> CurvatureVector:
    """Continuum curvature for a linear pump and circular probe (molecular frame).

    -C Im{(d1.e_pump)*(d2.e_pump) exp(i omega12 tau) int D1* x D2}, plus
    same-path terms that vanish under time reversal.
    """
    _require(pulses, Sequence.LIN_CIRC)
    return _mixed(dset, pulses, rho).ion


def curvature_exc(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> CurvatureVector:
    """Bound-state curvature for a circular pump and linear probe (molecular frame).

    -C Im{int (D1.e_probe)*(D2.e_probe) exp(i omega12 tau)} (d1 x d2).
    """
    _require(pulses, Sequence.CIRC_LIN)
    return _mixed(dset, pulses, rho).exc


def curvature_circcirc(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> MixedCurvature:
    """Curvature for two co-rotating circular pulses, split into exc/ion/mix.

    Each cross-path term carries -C/2 Im{... exp(i omega12 tau)}; the mix part
    holds (d1.E*)(D2.E)(D1* x d2) and (D1.E)*(d2.E)(d1 x D2).
    """
    _require(pulses, Sequence.CIRC_CIRC)
    return _mixed(dset, pulses, rho)


def curvature(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles) -> MixedCurvature:
    """Closed-form curvature of any sequence (unused parts are zero)."""
    return _mixed(dset, pulses, rho)


def curvature_batch(dset: DipoleSet, pulses: PulsePair, rotations: np.ndarray) -> np.ndarray:
    """Total molecular-frame curvature for a (m, 3, 3) stack of rotations."""
    terms = curvature_terms(dset, pulses)
    return _evaluate([t for ts in terms.values() for t in ts], rotations)


# ----------------------------------------------------------- finite differences


def central_gradient(f: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, step: float) -> np.ndarray:
    """Second-order central differences of ``f`` along each axis of ``x0``."""
    if not step > 0:
        raise ValueError("finite-difference step must be positive")
    x0 = np.asarray(x0, dtype=float)
    rows = []
    for i in range(x0.shape[0]):
        dx = np.zeros_like(x0)
        dx[i] = step
        rows.append((f(x0 + dx) - f(x0 - dx)) / (2.0 * step))
    return np.array(rows)


def _state_function(dset: DipoleSet, pulses: PulsePair, rho: EulerAngles, phase: float = 0.0):
    rt = rotation_matrix(rho).T
    s = np.sqrt(spin_scale(pulses))
    move_pump, move_probe = pulses.spin_carrying
    q0, p0 = pulses.pump_vector(), pulses.probe_vector()
    sqrt_w = np.sqrt(dset.grid.weights)
    gauge = np.exp(1j * phase)

    def psi(u: np.ndarray) -> np.ndarray:
        q = q0 + s * u if move_pump else q0
        p = p0 + s * u if move_probe else p0
        amp = amplitudes_molecular(dset, pulses, rt @ q, rt @ p)
        return gauge * np.concatenate([[amp.a1, amp.a2], sqrt_w * amp.a_k])

    return psi


def _check_spin(pulses: PulsePair):
    if not any(pulses.spin_carrying):
        raise ValueError("no spin-carrying (circular) pulse to differentiate against")


def curvature_fd_lab(
    dset: DipoleSet, pulses: PulsePair, rho: EulerAngles, step: float = 1e-4, at=None
) -> CurvatureVector:
    """Finite-difference curvature in the lab-frame field coordinates."""
    _check_spin(pulses)
    psi = _state_function(dset, pulses, rho)
    u0 = np.zeros(3) if at is None else np.asarray(at, dtype=float)
    g = central_gradient(psi, u0, step)
    m = np.conj(g) @ g.T
    full = 1j * np.array([m[1, 2] - m[2, 1], m[2, 0] - m[0, 2], m[0, 1] - m[1, 0]])
    return CurvatureVector(full.real, float(np.linalg.norm(full.imag)), "lab")


def curvature_fd(
    dset: DipoleSet, pulses: PulsePair, rho: EulerAngles, step: float = 1e-4
) -> CurvatureVector:
    """Finite-difference curvature, returned in the molecular frame."""
    lab = curvature_fd_lab(dset, pulses, rho, step)
    return CurvatureVector(rotation_matrix(rho).T @ lab.omega, lab.imag_residual, "molecular")


def connection_fd(
    dset: DipoleSet,
    pulses: PulsePair,
    rho: EulerAngles,
    step: float = 1e-4,
    at=None,
    phase: float = 0.0,
) -> Real3:
    """Real part of A = i <psi|grad psi> at field displacement ``at`` (lab frame).

    The imaginary part is -grad(|psi|^2)/2, a pure gradient that drops out
    of every closed-loop integral.
    """
    _check_spin(pulses)
    psi = _state_function(dset, pulses, rho, phase)
    u0 = np.zeros(3) if at is None else np.asarray(at, dtype=float)
    g = central_gradient(psi, u0, step)
    return (1j * (g @ np.conj(psi(u0)))).real


def _loop_basis(normal) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, n)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1), n


def loop_circulation(
    dset: DipoleSet,
    pulses: PulsePair,
    rho: EulerAngles,
    radius: float,
    normal=Z_HAT,
    center=None,
    n_points: int = 16,
    step: float = 1e-4,
    phase: float = 0.0,
) -> float:
    """Circulation of the connection around a circle in field space.

    The periodic trapezoid rule is exact here because the integrand is a
    trigonometric polynomial of low degree.
    """
    e1, e2, _ = _loop_basis(normal)
    c0 = np.zeros(3) if center is None else np.asarray(center, dtype=float)
    t = TWO_PI * np.arange(n_points) / n_points
    total = 0.0
    for ti in t:
        u = c0 + radius * (np.cos(ti) * e1 + np.sin(ti) * e2)
        du = radius * (-np.sin(ti) * e1 + np.cos(ti) * e2)
        total += connection_fd(dset, pulses, rho, step, u, phase) @ du
    return float(total * TWO_PI / n_points)


def disk_flux(
    dset: DipoleSet,
    pulses: PulsePair,
    rho: EulerAngles,
    radius: float,
    normal=Z_HAT,
    center=None,
    n_radial: int = 4,
    n_angle: int = 8,
    step: float = 1e-4,
) -> float:
    """Flux of the finite-difference curvature through a flat disk."""
    e1, e2, n = _loop_basis(normal)
    c0 = np.zeros(3) if center is None else np.asarray(center, dtype=float)
    x, wx = leggauss(n_radial)
    r = 0.5 * radius * (x + 1.0)
    wr = 0.5 * radius * wx * r
    t = TWO_PI * np.arange(n_angle) / n_angle
    total = 0.0
    for ri, wi in zip(r, wr):
        for ti in t:
            u = c0 + ri * (np.cos(ti) * e1 + np.sin(ti) * e2)
            total += wi * (curvature_fd_lab(dset, pulses, rho, step, u).omega @ n)
    return float(total * TWO_PI / n_angle)


# ------------------------------------------------------------------------ flux


def spin_direction_rotations(grid2d: SphereGrid, n_alpha: int) -> tuple[np.ndarray, np.ndarray]:
    """Rotations whose molecular-frame spin axis R^T z hits each sphere node.

    Returns a (n_nodes, n_alpha, 3, 3) stack; the first Euler angle sweeps
    the free rotation about the spin axis.
    """
    alpha = TWO_PI * np.arange(n_alpha) / n_alpha
    aa, tt = np.meshgrid(alpha, grid2d.theta, indexing="ij")
    chi = np.broadcast_to(np.pi - grid2d.phi, aa.shape)
    rots = rotation_matrices(aa, tt, chi)
    return np.transpose(rots, (1, 0, 2, 3)), grid2d.directions


def sphere_flux(
    field: Callable[[np.ndarray], np.ndarray], grid2d: SphereGrid
) -> float:
    """Flux of a vector field F(n) through the unit sphere."""
    n = grid2d.directions
    f = np.asarray(field(n))
    return float(grid2d.integrate(np.sum(f * n, axis=-1)))


def flux_sphere(
    dset: DipoleSet,
    pulses: PulsePair,
    grid2d: SphereGrid,
    k: float | None = None,
    n_alpha: int = 8,
    weight: Callable[[np.ndarray], np.ndarray] | None = None,
) -> float:
    """Flux of Omega_sigma + Omega_-sigma through the sphere of spin directions.

    The curvature at a spin direction n is averaged over the rotation about
    n.  ``weight`` optionally multiplies the integrand by a function of n,
    which turns the isotropic flux into an oriented-ensemble flux.
    """
    _check_spin(pulses)
    if k is not None and k != dset.k:
        raise ValueError(f"dipole set is tabulated at k={dset.k}, not k={k}")
    rots, n = spin_direction_rotations(grid2d, n_alpha)
    flat = rots.reshape(-1, 3, 3)
    omega = curvature_batch(dset, pulses, flat) + curvature_batch(dset, pulses.flipped(), flat)
    radial = np.sum(omega.reshape(len(grid2d), n_alpha, 3) * n[:, None, :], axis=-1).mean(axis=1)
    if weight is not None:
        radial = radial * np.asarray(weight(n))
    return float(grid2d.integrate(radial))
