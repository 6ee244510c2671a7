"""Named numerical checks run by ``chirogeom verify``.

Each check reports the worst error it saw against its tolerance.  The
tolerance scale passed on the command line multiplies every threshold.
"""

from __future__ import annotations

import math
import os
import tempfile
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import averaging as av
from . import curvature as cv
from . import dipoles as dp
from .config import RunConfig
from .core_math import (
    Z_HAT,
    EulerAngles,
    cross,
    dot,
    rotation_matrix,
    so3_quadrature,
    sphere_quadrature,
)
from .fields import Circular, PulsePair, polarization_vector, to_molecular
from .perturbation import continuum_amplitude, dichroic_yield_fixed, yield_fixed


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    error: float
    seconds: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error)) and self.error <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {self.detail}" if self.detail else ""
        return f"{status}  {self.name:<34s} tol={self.tolerance:.1e}  err={self.error:.3e}{extra}"


def rel_err(a, b, floor: float = 0.0) -> float:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    scale = max(float(np.max(np.abs(b), initial=0.0)), floor)
    diff = float(np.max(np.abs(a - b), initial=0.0))
    return diff / scale if scale > 0 else diff


def pulse_suite(rng: np.random.Generator, sigma: int = 1) -> list[PulsePair]:
    """One random pulse pair per sequence with a generic delay."""
    out = []
    for make in (PulsePair.lin_circ, PulsePair.circ_lin, PulsePair.circ_circ):
        amps = rng.uniform(0.5, 1.5, size=4)
        out.append(
            make(
                sigma,
                amp_pump_1=amps[0],
                amp_pump_2=amps[1],
                amp_probe_1=amps[2],
                amp_probe_2=amps[3],
                omega1=rng.uniform(0.6, 1.2),
                omega2=rng.uniform(0.1, 0.5),
                tau=rng.uniform(0.5, 5.0),
            )
        )
    return out


def monomial_moment(a: int, b: int, c: int) -> float:
    """Exact integral of x^a y^b z^c over the unit sphere."""
    if a % 2 or b % 2 or c % 2:
        return 0.0
    g = math.gamma
    return 2.0 * g((a + 1) / 2) * g((b + 1) / 2) * g((c + 1) / 2) / g((a + b + c + 3) / 2)


class Suite:
    def __init__(self, cfg: RunConfig, tol_scale: float = 1.0, seed: int = 20240611):
        self.cfg = cfg
        self.scale = tol_scale
        self.rng = np.random.default_rng(seed)
        self.results: list[CheckResult] = []
        self.grid = sphere_quadrature(6, 12)
        self.so3 = cfg.so3_grid
        primary = cfg.dipoles_at(0)
        self.sets = [primary]
        self.sym_sets = [primary] if cfg.expect_t_symmetric else []
        for s in (101, 102):
            extra = dp.generate_synthetic(s, 2, True, self.grid, k=0.8)
            self.sets.append(extra)
            self.sym_sets.append(extra)
        self.sets.append(dp.generate_synthetic(103, 2, False, self.grid, k=1.3))

    def run(self, name: str, tol: float, fn: Callable[[], float | tuple[float, str]]):
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:  # a crashing check is a failed check
            out = (float("inf"), f"{type(exc).__name__}: {exc}")
        err, detail = out if isinstance(out, tuple) else (out, "")
        self.results.append(
            CheckResult(name, tol * self.scale, float(err), time.perf_counter() - t0, detail)
        )

    def rhos(self, n: int) -> list[EulerAngles]:
        return [EulerAngles.random(self.rng) for _ in range(n)]

    def unit(self) -> np.ndarray:
        v = self.rng.normal(size=3)
        return v / np.linalg.norm(v)

    # ------------------------------------------------------------ core math
    def core(self):
        def orth():
            return max(
                np.linalg.norm(rotation_matrix(r) @ rotation_matrix(r).T - np.eye(3))
                for r in self.rhos(50)
            )

        def homomorphism():
            err = 0.0
            for r1, r2 in zip(self.rhos(50), self.rhos(50)):
                prod = rotation_matrix(r1) @ rotation_matrix(r2)
                err = max(err, np.abs(rotation_matrix(EulerAngles.from_matrix(prod)) - prod).max())
            return err

        def binet_cauchy():
            err = 0.0
            for _ in range(100):
                u, v, x, y = (self.rng.normal(size=3) + 1j * self.rng.normal(size=3) for _ in range(4))
                lhs = dot(cross(u, v), cross(x, y))
                rhs = dot(u, x) * dot(v, y) - dot(u, y) * dot(v, x)
                err = max(err, abs(lhs - rhs) / (1.0 + abs(rhs)))
            return err

        def sphere_exact():
            g = sphere_quadrature(8, 16)
            exps = [(a, b, c) for a in range(7) for b in range(7) for c in range(7) if a + b + c <= 6]
            coef = self.rng.normal(size=len(exps))
            n = g.directions
            vals = sum(cf * n[:, 0] ** a * n[:, 1] ** b * n[:, 2] ** c for cf, (a, b, c) in zip(coef, exps))
            exact = sum(cf * monomial_moment(*e) for cf, e in zip(coef, exps))
            return rel_err(g.integrate(vals), exact)

        def so3_cos4():
            g = so3_quadrature(5, 10, 10)
            u = self.unit()
            return abs(g.average((g.rotations @ u)[:, 2] ** 4) - 0.2)

        def rank2():
            g, err = self.so3, 0.0
            for _ in range(100):
                a, b, u, v = (self.rng.normal(size=3) + 1j * self.rng.normal(size=3) for _ in range(4))
                r = g.rotations
                quad = g.average((r @ u) @ a * ((r @ v) @ b))
                err = max(err, rel_err(quad, av.avg_rank2(a, b, u, v), 1e-300))
            return err

        def rank4():
            g, err = self.so3, 0.0
            r = g.rotations
            for _ in range(100):
                a, b, c, u, v, w, x = (self.rng.normal(size=3) + 1j * self.rng.normal(size=3) for _ in range(7))
                quad = g.average(((r @ u) @ a * ((r @ v) @ b) * ((r @ w) @ c))[:, None] * (r @ x))
                err = max(err, rel_err(quad, av.avg_rank4_vector(a, b, c, u, v, w, x)))
            return err

        self.run("rotation_orthogonality", 1e-14, orth)
        self.run("rotation_homomorphism", 1e-12, homomorphism)
        self.run("binet_cauchy", 1e-13, binet_cauchy)
        self.run("sphere_quadrature_exactness", 1e-12, sphere_exact)
        self.run("so3_quadrature_cos4", 1e-14, so3_cos4)
        self.run("rank2_identity", 1e-12, rank2)
        self.run("rank4_identity", 1e-10, rank4)
        self.run(
            "rank4_aligned_exact",
            0.0,
            lambda: float(np.abs(av.avg_rank4_vector(Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT, Z_HAT) - 0.2 * Z_HAT).max()),
        )

    # --------------------------------------------------------------- fields
    def fields(self):
        def helicity():
            err = 0.0
            for s in (1, -1):
                e = polarization_vector(Circular(s))
                err = max(err, abs((1j * cross(e, e.conj()))[2] - s))
            return err

        def round_trip():
            err = 0.0
            for rho in self.rhos(50):
                v = self.rng.normal(size=3) + 1j * self.rng.normal(size=3)
                back = rotation_matrix(rho) @ to_molecular(rho, v)
                err = max(err, np.abs(back - v).max() / np.linalg.norm(v))
            return err

        self.run("circular_helicity", 1e-14, helicity)
        self.run("frame_round_trip", 1e-13, round_trip)

    # -------------------------------------------------------------- dipoles
    def dipoles(self):
        def t_sym():
            err = 0.0
            for s in self.sym_sets:
                for a, b in ((s.D1, s.D1), (s.D2, s.D2), (s.D1, s.D2)):
                    err = max(err, abs(s.continuum.integrate(dot(np.conj(a), b)).imag))
                err = max(err, dp.t_symmetry_defect(s))
            return err

        def mirror_ok():
            err, flips = 0.0, 0.0
            for s in self.sets:
                m = dp.mirror(s)
                if dp.mirror(m) != s:
                    return float("inf"), "mirror is not an involution"
                even = lambda t: [np.linalg.norm(t.d1), np.linalg.norm(t.d2), dot(t.d1, t.d2),
                                  t.continuum.integrate(np.sum(np.abs(t.D1) ** 2, 1)),
                                  t.continuum.integrate(np.sum(np.abs(t.D2) ** 2, 1))]
                err = max(err, rel_err(even(m), even(s)))
                flips = max(flips, rel_err(dp.pseudoscalar(m), -dp.pseudoscalar(s)))
            return max(err, flips)

        def round_trip():
            with tempfile.TemporaryDirectory() as tmp:
                path = os.path.join(tmp, "set.json")
                for s in self.sets:
                    dp.save(s, path)
                    if dp.load(path) != s:
                        return float("inf"), "round trip changed the data"
            return 0.0

        def spot():
            b = dp.bound_from_scalars(-7.3e-2, 4.9e-2)
            return max(abs(dot(b.d1, b.d2) + 7.3e-2), abs(np.linalg.norm(cross(b.d1, b.d2)) - 4.9e-2)) / 4.9e-2

        self.run("time_reversal_realness", 1e-12, t_sym)
        self.run("mirror_involution_and_invariants", 1e-13, mirror_ok)
        self.run("dipole_file_round_trip", 0.0, round_trip)
        self.run("spot_bound_scalars", 1e-14, spot)

    # --------------------------------------------------------- perturbation
    def perturbation(self):
        def expansion():
            # |a_k|^2 for a circular probe expanded in x/y components
            err = 0.0
            for s in self.sets:
                for sigma in (1, -1):
                    pp = PulsePair.lin_circ(sigma, amp_pump_1=1.3, amp_pump_2=0.7, tau=1.1)
                    rho = self.rhos(1)[0]
                    r = rotation_matrix(rho)
                    x, y, z, q = r.T[:, 0], r.T[:, 1], r.T[:, 2], r.T @ pp.pump_vector().real
                    c = pp.path_weights
                    f = [c[0] * dot(s.d1, q), c[1] * dot(s.d2, q)]
                    D = [s.D1, s.D2]
                    total = 0.0
                    for j in range(2):
                        for l in range(2):
                            pre = 0.5 * np.conj(f[j]) * f[l]
                            total = total + pre * (
                                np.conj(D[j] @ x) * (D[l] @ x) + np.conj(D[j] @ y) * (D[l] @ y)
                                + 1j * sigma * (cross(np.conj(D[j]), D[l]) @ z)
                            )
                    a = continuum_amplitude(s, pp, rho).a_k
                    err = max(err, rel_err(np.abs(a) ** 2, total))
            return err

        def covariance():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    rho = self.rhos(1)[0]
                    g = self.rhos(1)[0]
                    gm = rotation_matrix(g)
                    rho2 = EulerAngles.from_matrix(gm @ rotation_matrix(rho))
                    # rotating pulses by g while rotating the molecule by g leaves W unchanged
                    base = yield_fixed(s, pp, rho)
                    from .perturbation import amplitudes_molecular
                    rt = rotation_matrix(rho2).T
                    a = amplitudes_molecular(s, pp, rt @ gm @ pp.pump_vector(), rt @ gm @ pp.probe_vector()).a_k
                    err = max(err, rel_err(s.continuum.integrate(np.abs(a) ** 2), base))
            return err

        def dichroic():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    for rho in self.rhos(20):
                        r = rotation_matrix(rho)
                        om = cv.curvature(s, pp, rho).total.omega + cv.curvature(s, pp.flipped(), rho).total.omega
                        rhs = pp.sigma * (r @ om)[2]
                        err = max(err, rel_err(dichroic_yield_fixed(s, pp, rho), rhs, 1e-3 * yield_fixed(s, pp, rho)))
            return err

        self.run("amplitude_component_expansion", 1e-12, expansion)
        self.run("yield_frame_covariance", 1e-12, covariance)
        self.run("dichroic_yield_equals_curvature", 1e-10, dichroic)

    # ------------------------------------------------------------ curvature
    def curvature(self):
        def fd_match():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    for rho in self.rhos(20):
                        fd = cv.curvature_fd(s, pp, rho, 1e-4)
                        cf = cv.curvature(s, pp, rho).total
                        err = max(err, rel_err(cf.omega, fd.omega, 1e-300))
            return err

        def fd_real():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    for rho in self.rhos(5):
                        fd = cv.curvature_fd(s, pp, rho, 1e-4)
                        err = max(err, fd.imag_residual / np.linalg.norm(fd.omega))
            return err

        def convergence():
            # residual must fall ~4x per halving or sit at the roundoff floor
            worst = 0.0
            for pp in pulse_suite(self.rng):
                rho = self.rhos(1)[0]
                s = self.sets[-1]
                exact = cv.curvature(s, pp, rho).total.omega
                res = [rel_err(cv.curvature_fd(s, pp, rho, h).omega, exact) for h in (0.2, 0.1, 0.05)]
                for a, b in zip(res, res[1:]):
                    if b > 1e-11 and a / b < 3.5:
                        worst = max(worst, b)
            return worst

        def stokes():
            err = 0.0
            for s in self.sets[:2]:
                for pp in pulse_suite(self.rng):
                    rho = self.rhos(1)[0]
                    n = self.unit()
                    center = 0.3 * self.rng.normal(size=3)
                    circ = cv.loop_circulation(s, pp, rho, 1e-2, n, center)
                    flux = cv.disk_flux(s, pp, rho, 1e-2, n, center)
                    err = max(err, rel_err(circ, flux))
            return err

        def directions():
            err = 0.0
            for s in self.sym_sets:
                for pp in pulse_suite(self.rng):
                    rho = self.rhos(1)[0]
                    mc = cv.curvature(s, pp, rho)
                    if pp.sequence.value == "CircLin":
                        ref = cross(s.d1, s.d2)
                        vec = mc.exc.omega
                    elif pp.sequence.value == "LinCirc":
                        ref = cv.p12_plus(s)
                        vec = mc.ion.omega
                    else:
                        ref = cross(s.d1, s.d2)
                        vec = mc.exc.omega
                    cosang = abs(vec @ ref) / (np.linalg.norm(vec) * np.linalg.norm(ref))
                    err = max(err, 1.0 - cosang)
            return err

        def helicity():
            err = 0.0
            for s in self.sets:
                pp = pulse_suite(self.rng)[0]
                rho = self.rhos(1)[0]
                err = max(err, rel_err(cv.curvature(s, pp, rho).total.omega,
                                       cv.curvature(s, pp.flipped(), rho).total.omega))
                cc = pulse_suite(self.rng)[2]
                tot = lambda p: cv.curvature(s, p, rho).total.omega + cv.curvature(s, p.flipped(), rho).total.omega
                err = max(err, rel_err(tot(cc), tot(cc.flipped())))
            return err

        self.run("closed_form_vs_finite_difference", 1e-6, fd_match)
        self.run("finite_difference_realness", 1e-10, fd_real)
        self.run("finite_difference_convergence", 1e-11, convergence)
        self.run("stokes_loop_vs_disk_flux", 1e-4, stokes)
        self.run("curvature_direction_laws", 1e-12, directions)
        self.run("curvature_helicity_laws", 1e-12, helicity)

    # ------------------------------------------------------------ averaging
    def averaging(self):
        fgrid, alpha = self.cfg.flux_grid, self.cfg.flux_alpha

        def scalar():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    err = max(err, rel_err(av.avg_scalar(s, pp, e), av.oracle_scalar(s, pp, e, self.so3)))
            return err

        def orientation():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng, sigma=int(self.rng.choice([1, -1]))):
                    e = self.unit()
                    closed = av.avg_orientation_vector(s, pp, e)
                    err = max(err, rel_err(closed, av.oracle_orientation_yield(s, pp, e, self.so3)))
                    err = max(err, rel_err(closed, av.oracle_orientation_curvature(s, pp, e, self.so3)))
            return err

        def sin_law():
            err = 0.0
            for s in self.sym_sets:
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    err = max(err, rel_err(av.sin_law_scalar(s, pp, e), av.oracle_scalar(s, pp, e, self.so3)))
                    err = max(err, rel_err(av.sin_law_orientation(s, pp, e),
                                           av.oracle_orientation_yield(s, pp, e, self.so3)[2]))
            return err

        def transverse():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    o = av.oracle_orientation_yield(s, pp, e, self.so3)
                    err = max(err, np.abs(o[:2]).max() / av.oracle_yield(s, pp, self.so3))
            return err

        def enantiomer():
            err = 0.0
            for s in self.sets:
                m = dp.mirror(s)
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    a = av.orient_avg(s, pp, e).orient_z
                    b = av.orient_avg(m, pp, dp.MIRROR @ e).orient_z
                    err = max(err, rel_err(b, -a))
                    # first moment of the flux along a molecular axis, transported by the mirror
                    axis = self.unit()
                    fa = cv.flux_sphere(s, pp, fgrid, n_alpha=alpha, weight=lambda n: n @ axis)
                    fb = cv.flux_sphere(m, pp, fgrid, n_alpha=alpha, weight=lambda n: n @ (dp.MIRROR @ axis))
                    err = max(err, rel_err(fb, -fa))
                    da = av.oracle_dichroic_yield(s, pp, self.so3, weight=lambda n: n @ axis)
                    db = av.oracle_dichroic_yield(m, pp, self.so3, weight=lambda n: n @ (dp.MIRROR @ axis))
                    err = max(err, rel_err(db, -da))
            return err

        def mirror_fixed():
            err = 0.0
            for s in self.sets:
                m = dp.mirror(s)
                for pp in pulse_suite(self.rng):
                    for rho in self.rhos(5):
                        r = rotation_matrix(rho)
                        partner = EulerAngles.from_matrix(dp.MIRROR @ r @ dp.MIRROR)
                        err = max(err, rel_err(dichroic_yield_fixed(m, pp, rho),
                                               dichroic_yield_fixed(s, pp, partner), 1e-3 * yield_fixed(s, pp, rho)))
            return err

        def sigma_flip():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    err = max(err, rel_err(av.orient_avg(s, pp.flipped(), e).orient_z, -av.orient_avg(s, pp, e).orient_z))
            return err

        def tau_zero():
            err = 0.0
            for s in self.sym_sets:
                for pp in pulse_suite(self.rng)[:2]:
                    p0 = pp.with_tau(0.0)
                    e = self.unit()
                    o = av.orient_avg(s, p0, e)
                    err = max(err, abs(o.scalar), abs(o.orient_z))
                    err = max(err, np.abs(cv.curvature(s, p0, self.rhos(1)[0]).total.omega).max())
            return err

        def delay_law():
            err = 0.0
            for s in self.sym_sets:
                for pp in pulse_suite(self.rng):
                    e = self.unit()
                    taus = np.linspace(0.0, 12.0, 9)
                    vals = np.array([[av.avg_scalar(s, pp.with_tau(t), e), av.orient_avg(s, pp.with_tau(t), e).orient_z] for t in taus])
                    basis = np.sin(pp.omega12 * taus)[:, None]
                    fit, *_ = np.linalg.lstsq(basis, vals, rcond=None)
                    err = max(err, np.abs(vals - basis @ fit).max() / np.abs(vals).max())
            return err

        def flux_isotropic():
            err = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    lhs = pp.sigma * cv.flux_sphere(s, pp, fgrid, n_alpha=alpha) / (4 * np.pi)
                    rhs = av.oracle_dichroic_yield(s, pp, self.so3)
                    err = max(err, abs(lhs - rhs) / av.oracle_yield(s, pp, self.so3))
            return err

        def flux_oriented():
            err = 0.0
            wt = lambda n: 1.0 + 0.7 * n[..., 2] - 0.4 * n[..., 0] * n[..., 1]
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    lhs = pp.sigma * cv.flux_sphere(s, pp, fgrid, n_alpha=alpha, weight=wt) / (4 * np.pi)
                    rhs = av.oracle_dichroic_yield(s, pp, self.so3, weight=wt)
                    err = max(err, rel_err(lhs, rhs))
            return err

        def r_factors():
            err = 0.0
            for s in self.sym_sets:
                lc, cl, cc = pulse_suite(self.rng)
                for pp, e in ((lc, av.e_along_p12_plus(s)), (cl, av.e_along_d1_cross_d2(s)), (cc, self.unit())):
                    o = av.orient_avg(s, pp, e)
                    ratio = o.orient_z / (pp.sigma * o.scalar)
                    err = max(err, abs(ratio - av.r_factor_diagnostic(s, pp, e)))
            return err

        def cos_beta():
            worst = 0.0
            for s in self.sets:
                for pp in pulse_suite(self.rng):
                    o = av.orient_avg(s, pp, self.unit())
                    worst = max(worst, abs(o.cos_beta) - 1.0)
            return max(worst, 0.0)

        def spot_scaling():
            err = 0.0
            for s in self.sym_sets:
                lc, cl, _ = pulse_suite(self.rng)
                b0 = dp.bound_from_scalars(-7.3e-2, 4.9e-2)
                b1 = dp.bound_from_scalars(2.5 * -7.3e-2, 0.4 * 4.9e-2)
                s0, s1 = s.with_bound(b0), s.with_bound(b1)
                e_ion = av.e_along_p12_plus(s)
                err = max(err, rel_err(av.avg_scalar(s1, lc, e_ion), 2.5 * av.avg_scalar(s0, lc, e_ion)))
                e0, e1 = av.e_along_d1_cross_d2(s0), av.e_along_d1_cross_d2(s1)
                err = max(err, rel_err(av.avg_scalar(s1, cl, e1), 0.4 * av.avg_scalar(s0, cl, e0)))
            return err

        self.run("avg_scalar_vs_oracle", 1e-8, scalar)
        self.run("orientation_vs_yield_oracle", 1e-8, orientation)
        self.run("sin_law_forms_vs_oracle", 1e-8, sin_law)
        self.run("orientation_transverse_null", 1e-10, transverse)
        self.run("enantiomer_antisymmetry", 1e-10, enantiomer)
        self.run("enantiomer_fixed_orientation_map", 1e-12, mirror_fixed)
        self.run("helicity_flip_antisymmetry", 1e-10, sigma_flip)
        self.run("zero_delay_nulls", 1e-12, tau_zero)
        self.run("sin_delay_law", 1e-10, delay_law)
        self.run("flux_vs_isotropic_dichroism", 1e-8, flux_isotropic)
        self.run("flux_vs_oriented_dichroism", 1e-8, flux_oriented)
        self.run("alignment_factor_diagnostics", 1e-10, r_factors)
        self.run("cos_beta_bound", 1e-12, cos_beta)
        self.run("spot_scalar_scaling", 1e-12, spot_scaling)

    def file_checks(self):
        if not self.cfg.files:
            return
        s = self.sets[0]
        if self.cfg.expect_t_symmetric:
            self.run("dipole_file_time_reversal", 1e-12, lambda: dp.t_symmetry_residual(s))
        self.run("dipole_file_mirror_closure", 0.0,
                 lambda: 0.0 if s.grid.node_permutation(dp.MIRROR) is not None else float("inf"))


def run_checks(cfg: RunConfig, tol_scale: float = 1.0) -> list[CheckResult]:
    suite = Suite(cfg, tol_scale)
    suite.file_checks()
    suite.core()
    suite.fields()
    suite.dipoles()
    suite.perturbation()
    suite.curvature()
    suite.averaging()
    return suite.results
